// mvop: compute, deform, verify and benchmark matrix-valued orthogonal polynomial families.
//
// Exit codes: 0 success (all checks pass), 1 a check failed, 2 bad configuration.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "mvop/json_io.hpp"
#include "mvop/quadrature.hpp"
#include "mvop/suite.hpp"

using namespace mvop;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family = "su2";
    std::string ell;
    std::optional<int> two_ell;
    std::optional<int> n, m, i;
    double alpha = 0, beta = 0;
    double kappa = 0;
    int dmax = 8;
    std::string suite = "all";
    std::uint64_t seed = 20240611;
    double tolerance_scale = 1;
    int order = 0;
    std::string out;
    std::string format = "json";
    std::string strategy = "all";
};

int parse_two_ell(const Options& o) {
    if (o.two_ell) return *o.two_ell;
    if (o.ell.empty()) throw ConfigError("su2 needs --ell (e.g. 3/2) or --two-ell");
    const auto slash = o.ell.find('/');
    try {
        if (slash != std::string::npos) {
            const int p = std::stoi(o.ell.substr(0, slash)), q = std::stoi(o.ell.substr(slash + 1));
            if (q == 1) return 2 * p;
            if (q == 2) return p;
            throw ConfigError("--ell must be a multiple of 1/2");
        }
        const double v = std::stod(o.ell);
        const double twice = 2 * v;
        if (std::abs(twice - std::round(twice)) > 1e-12) throw ConfigError("--ell must be a multiple of 1/2");
        return static_cast<int>(std::lround(twice));
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse --ell " + o.ell);
    }
}

int required(const std::optional<int>& v, const char* flag, const std::string& fam) {
    if (!v) throw ConfigError(fam + " needs " + flag);
    return *v;
}

FamilyDescriptor make_family(const Options& o) {
    try {
        if (o.family == "su2") {
            const int t = parse_two_ell(o);
            if (t < 0) throw ConfigError("su2 needs ell >= 0");
            return family_su2(t);
        }
        if (o.family == "a1") {
            const int n = required(o.n, "--n", "a1"), m = required(o.m, "--m", "a1"), i = required(o.i, "--i", "a1");
            if (n < 2 || m < 1 || i < 1 || i > n - 1)
                throw ConfigError("a1 needs n >= 2, m >= 1 and 1 <= i <= n-1");
            return family_a1(n, m, i);
        }
        if (o.family == "c1") {
            const int n = required(o.n, "--n", "c1");
            if (n < 3) throw ConfigError("c1 needs n >= 3");
            return family_c1(n);
        }
        if (o.family == "jacobi") {
            if (!(o.alpha > -1) || !(o.beta > -1)) throw ConfigError("jacobi needs alpha > -1 and beta > -1");
            return family_scalar_jacobi(o.alpha, o.beta);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown family " + o.family + " (expected su2, a1, c1 or jacobi)");
}

void check_common(const Options& o) {
    if (o.kappa < 0) throw ConfigError("--kappa must be nonnegative");
    if (o.dmax < 0) throw ConfigError("--dmax must be nonnegative");
    if (o.order < 0) throw ConfigError("--order must be nonnegative");
    if (!(o.tolerance_scale > 0)) throw ConfigError("--tolerance-scale must be positive");
}

Json config_json(const Options& o, const FamilyDescriptor& f) {
    return {{"family", f.label()},   {"kappa", o.kappa},        {"dmax", o.dmax},   {"suite", o.suite},
            {"seed", o.seed},        {"tolerance_scale", o.tolerance_scale}, {"order", o.order},
            {"precision", sizeof(Real) == sizeof(double) ? "double" : "long double"}};
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw ConfigError("cannot write " + o.out);
    f << text;
}

int cmd_verify(const Options& o) {
    check_common(o);
    SuiteConfig cfg{make_family(o), o.kappa, o.dmax, o.suite, o.seed, o.tolerance_scale, o.order};
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end()) throw ConfigError("unknown suite " + o.suite);
    if (o.format != "json" && o.format != "text") throw ConfigError("verify --format must be json or text");
    const std::vector<CheckResult> checks = run_suite(cfg);
    if (o.format == "text") {
        std::ostringstream os;
        for (const auto& c : checks) {
            os << (c.status == "pass" ? "pass " : c.status == "fail" ? "FAIL " : "skip ") << c.id;
            if (c.status != "skipped") os << "  residual=" << static_cast<double>(c.residual) << " tol=" << static_cast<double>(c.tolerance);
            if (!c.note.empty()) os << "  (" << c.note << ")";
            os << '\n';
        }
        emit(o, os.str());
    } else {
        Json arr = Json::array();
        for (const auto& c : checks) arr.push_back(check_to_json(c));
        const Json report = {{"version", kVersion}, {"config", config_json(o, cfg.family)}, {"checks", arr}};
        emit(o, report.dump(2) + "\n");
    }
    return all_passed(checks) ? 0 : 1;
}

int cmd_compute(const Options& o) {
    check_common(o);
    const FamilyDescriptor f = make_family(o);
    const DeformedFamily df = deformed_weight(f, o.kappa);
    const MonicSequence seq = monic_mvops(df, o.dmax, o.order);
    const EigenData eig = eigen_check(seq, df.D);
    Json polys = Json::array(), norms = Json::array(), lambdas = Json::array();
    for (std::size_t d = 0; d < seq.polys.size(); ++d) {
        polys.push_back(matpoly_to_json(seq.polys[d]));
        norms.push_back(matrix_to_json(seq.norms[d]));
        lambdas.push_back(matrix_to_json(eig.lambdas[d]));
    }
    Json out = {{"version", kVersion},
                {"config", config_json(o, f)},
                {"size", f.N},
                {"polys", polys},
                {"norms", norms},
                {"lambdas", lambdas}};
    if (o.dmax >= 1) {
        const RecurrenceData rec = three_term(seq);
        Json B = Json::array(), C = Json::array();
        for (const auto& b : rec.B) B.push_back(matrix_to_json(b));
        for (const auto& c : rec.C) C.push_back(matrix_to_json(c));
        out["recurrence"] = {{"B", B}, {"C", C}, {"residual", rec.residual}};
    }
    out["certificates"] = {{"cross_gram", seq.cross_residual}, {"eigen", eig.max_residual}};
    emit(o, out.dump(2) + "\n");
    return 0;
}

int cmd_deform(const Options& o) {
    check_common(o);
    const DeformedFamily df = deformed_weight(make_family(o), o.kappa);
    emit(o, deformed_to_json(df).dump(2) + "\n");
    return 0;
}

int cmd_family(const Options& o) {
    emit(o, family_to_json(make_family(o)).dump(2) + "\n");
    return 0;
}

int cmd_quadrature(const Options& o) {
    if (!(o.alpha > -1) || !(o.beta > -1)) throw ConfigError("quadrature needs alpha > -1 and beta > -1");
    if (o.order < 1) throw ConfigError("quadrature needs --order >= 1");
    emit(o, rule_csv(gauss_jacobi_rule(o.alpha, o.beta, o.order)));
    return 0;
}

int cmd_bench(const Options& o) {
    check_common(o);
    if (o.strategy != "all" && o.strategy != "gs" && o.strategy != "recurrence" && o.strategy != "rodrigues")
        throw ConfigError("--strategy must be gs, recurrence, rodrigues or all");
    const FamilyDescriptor f = make_family(o);
    DeformationChain chain(f);
    const DeformedFamily& df = chain.at(o.kappa);
    const MonicSequence ref = monic_mvops(df, o.dmax, o.order);
    const bool want_rod = o.strategy == "all" || o.strategy == "rodrigues";
    if (want_rod)
        for (int d = 0; d <= o.dmax; ++d) chain.at(o.kappa + d);  // build the deformations outside the timed region

    using clock = std::chrono::steady_clock;
    auto ms = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double, std::milli>(b - a).count(); };
    auto deviation = [&](const MatPoly& q, int d) {
        return static_cast<double>(coeff_distance(q, ref.polys[d]) / std::max<Real>(1, ref.polys[d].max_abs()));
    };
    std::ostringstream os;
    os << "degree,strategy,wall_time_ms,max_residual\n";
    bool ok = true;
    for (int d = 0; d <= o.dmax; ++d) {
        if (o.strategy == "all" || o.strategy == "gs") {
            const auto t0 = clock::now();
            const MonicSequence s = monic_mvops(df, d, o.order);
            const auto t1 = clock::now();
            os << d << ",gs," << ms(t0, t1) << ',' << static_cast<double>(s.cross_residual) << '\n';
        }
        if (o.strategy == "all" || o.strategy == "recurrence") {
            const auto t0 = clock::now();
            const MonicSequence s = monic_by_recurrence(df, d, o.order);
            const auto t1 = clock::now();
            const double dev = deviation(s.polys[d], d);
            ok = ok && dev < 1e-8 * o.tolerance_scale;
            os << d << ",recurrence," << ms(t0, t1) << ',' << dev << '\n';
        }
        if (want_rod) {
            const auto t0 = clock::now();
            const RodriguesResult r = rodrigues(chain, o.kappa, d);
            const auto t1 = clock::now();
            const double dev = deviation(r.Q, d);
            if (d <= 5) ok = ok && dev < 1e-8 * o.tolerance_scale;
            os << d << ",rodrigues," << ms(t0, t1) << ',' << dev << '\n';
        }
    }
    emit(o, os.str());
    return ok ? 0 : 1;
}

void add_family_options(CLI::App* app, Options& o) {
    app->add_option("--family", o.family, "su2, a1, c1 or jacobi");
    app->add_option("--ell", o.ell, "su2 spin, e.g. 1 or 3/2");
    app->add_option("--two-ell", o.two_ell, "su2 size minus one");
    app->add_option("--n", o.n, "a1/c1 parameter n");
    app->add_option("--m", o.m, "a1 parameter m");
    app->add_option("--i", o.i, "a1 parameter i");
    app->add_option("--alpha", o.alpha, "jacobi exponent of (1-y)");
    app->add_option("--beta", o.beta, "jacobi exponent of y");
}

void add_run_options(CLI::App* app, Options& o) {
    app->add_option("--kappa", o.kappa, "deformation parameter, >= 0");
    app->add_option("--dmax", o.dmax, "largest degree");
    app->add_option("--order", o.order, "quadrature order override (0: default policy)");
    app->add_option("--tolerance-scale", o.tolerance_scale, "multiplies every default tolerance");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-valued orthogonal polynomials: deformation, verification and export"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "run a verification suite; exit 0 iff every check passes");
    add_family_options(verify, o);
    add_run_options(verify, o);
    verify->add_option("--suite", o.suite, "all, ortho, symmetry, shift, rodrigues, gamma, commutator or krawtchouk");
    verify->add_option("--seed", o.seed, "seed for randomized checks");
    verify->add_option("--format", o.format, "json or text");
    verify->add_option("--out", o.out, "report path (default stdout)");

    auto* compute = app.add_subcommand("compute", "monic polynomials, norms, eigenvalues and recurrence as JSON");
    add_family_options(compute, o);
    add_run_options(compute, o);
    compute->add_option("--out", o.out, "output path (default stdout)");

    auto* deform = app.add_subcommand("deform", "deformed weight data as JSON");
    add_family_options(deform, o);
    add_run_options(deform, o);
    deform->add_option("--out", o.out, "output path (default stdout)");

    auto* family = app.add_subcommand("family", "family descriptor as JSON");
    add_family_options(family, o);
    family->add_option("--out", o.out, "output path (default stdout)");

    auto* quad = app.add_subcommand("quadrature", "Gauss-Jacobi nodes and weights as CSV");
    quad->add_option("--alpha", o.alpha, "exponent of (1-y)");
    quad->add_option("--beta", o.beta, "exponent of y");
    quad->add_option("--order", o.order, "number of nodes")->required();
    quad->add_option("--out", o.out, "output path (default stdout)");

    auto* bench = app.add_subcommand("bench", "time Gram-Schmidt, recurrence and Rodrigues constructions (CSV)");
    add_family_options(bench, o);
    add_run_options(bench, o);
    bench->add_option("--strategy", o.strategy, "gs, recurrence, rodrigues or all");
    bench->add_option("--out", o.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return cmd_verify(o);
        if (*compute) return cmd_compute(o);
        if (*deform) return cmd_deform(o);
        if (*family) return cmd_family(o);
        if (*quad) return cmd_quadrature(o);
        if (*bench) return cmd_bench(o);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const DeformationError& e) {
        std::cerr << "deformation rejected: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
