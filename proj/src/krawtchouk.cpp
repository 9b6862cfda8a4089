#include "mvop/krawtchouk.hpp"

#include <algorithm>
#include <stdexcept>

namespace mvop {

Rational krawtchouk(int n, int x, int N) {
    if (n < 0 || n > N) throw std::invalid_argument("Krawtchouk degree out of range");
    Rational sum = 0, term = 1;
    const int top = x >= 0 ? std::min(n, x) : n;
    for (int k = 0; k <= top; ++k) {
        if (k > 0) term = term * Rational(-n + k - 1) * Rational(-x + k - 1) * 2 / (Rational(-N + k - 1) * k);
        sum += term;
    }
    return sum;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

RatMatrix rat_identity(int n) {
    RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMatrix rat_multiply(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMatrix c(n, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

Matrix to_matrix(const RatMatrix& m) {
    const int n = static_cast<int>(m.size());
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = Complex(static_cast<Real>(m[i][j]), 0);
    return out;
}

KrawtchoukKernel build_kernel(int twoEll) {
    if (twoEll < 0) throw std::invalid_argument("twoEll must be nonnegative");
    const int N = twoEll, n = N + 1;
    KrawtchoukKernel k;
    k.twoEll = N;
    k.K.assign(n, std::vector<Rational>(n, Rational(0)));
    k.M = rat_identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k.K[i][j] = krawtchouk(j, i, N);
    for (int j = 0; j < n; ++j) k.M[j][j] = Rational(binomial(N, j));
    k.Kinv = rat_multiply(rat_multiply(k.M, k.K), k.M);
    const Rational scale = Rational(1) / Rational(BigInt(1) << N);
    for (auto& row : k.Kinv)
        for (auto& v : row) v *= scale;
    if (rat_multiply(k.K, k.Kinv) != rat_identity(n)) throw std::logic_error("K * Kinv is not the identity");
    return k;
}

RatMatrix s_matrix(int twoEll) {
    const int n = twoEll + 1;
    RatMatrix s(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 1; i < n; ++i) s[i][i - 1] = Rational(i, 2);
    for (int i = 0; i + 1 < n; ++i) s[i][i + 1] = Rational(twoEll - i, 2);
    return s;
}

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

bool ExactReport::passed() const { return failures() == 0; }

std::size_t ExactReport::failures() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok(); }));
}

namespace {

// K_k(i), with out-of-range degrees only ever reached through zero prefactors.
struct Table {
    int N;
    std::vector<std::vector<Rational>> v;  // v[k][i]

    explicit Table(int N_) : N(N_), v(N_ + 1, std::vector<Rational>(N_ + 1)) {
        for (int k = 0; k <= N; ++k)
            for (int i = 0; i <= N; ++i) v[k][i] = krawtchouk(k, i, N);
    }
    // prefactor * K_k(i), never evaluating K_k when prefactor is zero
    Rational scaled(const Rational& pre, int k, int i) const {
        if (pre == 0) return 0;
        if (k < 0 || k > N || i < 0 || i > N) throw std::logic_error("Krawtchouk index out of range with nonzero prefactor");
        return pre * v[k][i];
    }
};

}  // namespace

ExactReport verify_orthogonality_identities(int twoEll) {
    const int N = twoEll;
    const Rational ell(N, 2);
    const Table t(N);
    ExactReport rep;
    const Rational two_pow(BigInt(1) << N);
    for (int k = 0; k <= N; ++k) {
        const Rational pre = two_pow / Rational(binomial(N, k));
        for (int j = 0; j <= N; ++j) {
            Rational s0 = 0, s1 = 0, s2 = 0;
            for (int i = 0; i <= N; ++i) {
                const Rational base = Rational(binomial(N, i)) * t.v[k][i] * t.v[j][i];
                s0 += base;
                s1 += base * i;
                s2 += base * i * i;
            }
            const Rational r0 = j == k ? pre : Rational(0);

            Rational r1 = 0;
            if (j == k + 1) r1 = -Rational(k + 1, 2);
            else if (j == k) r1 = ell;
            else if (j == k - 1) r1 = -Rational(N - k + 1, 2);

            Rational r2 = 0;
            if (j == k + 2) r2 = Rational((k + 1) * (k + 2), 4);
            else if (j == k + 1) r2 = -ell * (k + 1);
            else if (j == k) r2 = ell * (ell + Rational(1, 2)) + k * (ell - Rational(k, 2));
            else if (j == k - 1) r2 = -ell * (N - k + 1);
            else if (j == k - 2) r2 = Rational((N - k + 1) * (N - k + 2), 4);

            rep.records.push_back({"ortho_K", {N, k, j}, s0, r0});
            rep.records.push_back({"ortho_K_i", {N, k, j}, s1, pre * r1});
            rep.records.push_back({"ortho_K_i2", {N, k, j}, s2, pre * r2});
        }
    }
    return rep;
}

ExactReport verify_recurrences(int twoEll) {
    const int N = twoEll;
    const Rational ell(N, 2);
    const Table t(N);
    ExactReport rep;
    for (int i = 0; i <= N; ++i) {
        for (int k = 0; k <= N; ++k) {
            const Rational up = t.scaled(Rational(N - k, 2), k + 1, i);
            const Rational mid = t.scaled(ell - k, k, i);
            const Rational down = t.scaled(Rational(k, 2), k - 1, i);

            const Rational lhs1 = t.scaled(Rational(N - i), k, i + 1);
            rep.records.push_back({"diff_K_forward", {N, i, k}, lhs1, up + mid - down});

            const Rational lhs2 = t.scaled(Rational(i), k, i - 1);
            rep.records.push_back({"diff_K_backward", {N, i, k}, lhs2, -up + mid + down});

            const Rational lhs3 = -Rational(i) * t.v[k][i];
            const Rational rhs3 = up - Rational(N, 2) * t.v[k][i] + down;
            rep.records.push_back({"three_term_K", {N, i, k}, lhs3, rhs3});

            // The two first-order relations add up to the difference equation in x.
            rep.records.push_back({"difference_K", {N, i, k}, lhs1 + lhs2, Rational(N - 2 * k) * t.v[k][i]});
        }
    }
    return rep;
}

ExactReport check_S_diagonalization(int twoEll) {
    const int N = twoEll, n = N + 1;
    const RatMatrix S = s_matrix(N);
    const KrawtchoukKernel ker = build_kernel(N);
    const RatMatrix SK = rat_multiply(S, ker.K);
    ExactReport rep;
    for (int j = 0; j < n; ++j) {
        const Rational eig = Rational(N, 2) - j;
        for (int i = 0; i < n; ++i) rep.records.push_back({"S_eigencolumn", {N, i, j}, SK[i][j], eig * ker.K[i][j]});
    }
    return rep;
}

ExactReport check_kernel(int twoEll) {
    const int n = twoEll + 1;
    const KrawtchoukKernel ker = build_kernel(twoEll);
    const RatMatrix id = rat_identity(n);
    const RatMatrix a = rat_multiply(ker.K, ker.Kinv), b = rat_multiply(ker.Kinv, ker.K);
    ExactReport rep;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rep.records.push_back({"K_times_Kinv", {twoEll, i, j}, a[i][j], id[i][j]});
            rep.records.push_back({"Kinv_times_K", {twoEll, i, j}, b[i][j], id[i][j]});
            rep.records.push_back({"K_self_dual", {twoEll, i, j}, ker.K[i][j], ker.K[j][i]});
        }
    return rep;
}

}  // namespace mvop
