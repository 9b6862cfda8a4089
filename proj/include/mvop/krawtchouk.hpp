/**
 * @file krawtchouk.hpp
 * @brief Exact Krawtchouk polynomials K_n(x; 1/2, N) and identity checks in rational arithmetic.
 */
#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mvop/types.hpp"

namespace mvop {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Terminating 2F1(-n, -x; -N; 2).
Rational krawtchouk(int n, int x, int N);

BigInt binomial(int n, int k);

struct KrawtchoukKernel {
    int twoEll = 0;
    RatMatrix K;     ///< K[i][j] = K_j(i)
    RatMatrix M;     ///< diag(binomial(N, j))
    RatMatrix Kinv;  ///< 2^{-N} M K M
};

KrawtchoukKernel build_kernel(int twoEll);

RatMatrix rat_multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix rat_identity(int n);
Matrix to_matrix(const RatMatrix& m);

/// Tridiagonal S with S[i][i-1] = i/2 and S[i][i+1] = (N-i)/2.
RatMatrix s_matrix(int twoEll);

/// "p/q", or "p" for integers.
std::string to_string(const Rational& r);

struct IdentityRecord {
    std::string identity;
    std::vector<int> indices;
    Rational lhs;
    Rational rhs;

    bool ok() const { return lhs == rhs; }
};

struct ExactReport {
    std::vector<IdentityRecord> records;

    bool passed() const;
    std::size_t failures() const;
};

ExactReport verify_orthogonality_identities(int twoEll);
ExactReport verify_recurrences(int twoEll);
/// Column j of K is an eigenvector of S with eigenvalue N/2 - j.
ExactReport check_S_diagonalization(int twoEll);
/// K * Kinv = I, Kinv * K = I and K = K^T, entrywise.
ExactReport check_kernel(int twoEll);

}  // namespace mvop
