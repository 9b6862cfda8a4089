#include "mvop/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace mvop {

namespace {

class Recorder {
public:
    Recorder(const SuiteConfig& cfg, std::vector<CheckResult>& out) : cfg_(cfg), out_(out) {}

    void below(const std::string& id, const std::string& ref, Real residual, Real tol, Json extra = Json::object()) {
        CheckResult c{id, ref, params(std::move(extra)), residual, tol * cfg_.tolerance_scale, "", ""};
        c.status = residual < c.tolerance ? "pass" : "fail";
        out_.push_back(std::move(c));
    }

    void exact(const std::string& id, const std::string& ref, std::size_t failures, Json extra = Json::object()) {
        CheckResult c{id, ref, params(std::move(extra)), Real(failures), 0, failures == 0 ? "pass" : "fail", "exact"};
        out_.push_back(std::move(c));
    }

    void skipped(const std::string& id, const std::string& reason) {
        out_.push_back({id, "", params(Json::object()), 0, 0, "skipped", reason});
    }

    void error(const std::string& id, const std::string& what) {
        out_.push_back({id, "", params(Json::object()), 0, 0, "fail", what});
    }

private:
    Json params(Json extra) const {
        Json p = {{"family", cfg_.family.label()}, {"kappa", cfg_.kappa}, {"dmax", cfg_.dmax}};
        for (auto it = extra.begin(); it != extra.end(); ++it) p[it.key()] = it.value();
        return p;
    }

    const SuiteConfig& cfg_;
    std::vector<CheckResult>& out_;
};

void ortho_suite(const SuiteConfig& cfg, DeformationChain& chain, Recorder& rec) {
    const DeformedFamily& df = chain.at(cfg.kappa);
    rec.below("weight.tsym", "T F^* = F T", df.tsol.tsym_residual, 1e-9);
    rec.exact("weight.positive", "T > 0 and weight factor positive definite",
              df.tsol.positive && df.min_eigenvalue > 0 ? 0 : 1, {{"min_eigenvalue", df.min_eigenvalue}});
    rec.below("weight.conjugation", "Psi0^-1 D Psi0 = y(1-y)d^2 + a d + F",
              conjugation_residual(df.base, cfg.kappa, df.sign), 1e-9);
    const MonicSequence seq = monic_mvops(df, cfg.dmax, cfg.order);
    rec.below("ortho.cross_gram", "<Q_d, Q_d'> = 0 for d != d'", seq.cross_residual, 1e-9);
    if (cfg.dmax >= 2) rec.below("ortho.recurrence", "three-term recurrence", three_term(seq).residual, 1e-9);
    else rec.skipped("ortho.recurrence", "needs dmax >= 2");
}

void symmetry_suite(const SuiteConfig& cfg, DeformationChain& chain, Recorder& rec) {
    const DeformedFamily& df = chain.at(cfg.kappa);
    const MonicSequence seq = monic_mvops(df, cfg.dmax, cfg.order);
    const HyperOp D = df.D;
    rec.below("symmetry.D", "<Q D, R> = <Q, R D>",
              symmetry_check(seq, [&D](const MatPoly& p) { return apply_hyper(p, D); }), 1e-9);
    const EigenData eig = eigen_check(seq, D);
    rec.below("symmetry.eigen", "Q_d D = Lambda_d Q_d", eig.max_residual, 1e-9);
    if (df.base.name == "su2" && cfg.kappa == 0) {
        Real worst = 0;
        for (int d = 0; d <= cfg.dmax; ++d)
            worst = std::max(worst, max_abs(eig.lambdas[d] - su2_lambda_closed_form(df.base.N - 1, d)));
        rec.below("symmetry.lambda_closed_form", "Lambda_d = -d(2ell+2+d) + i(2ell-i)", worst, 1e-10);
    }
}

void gamma_suite(const SuiteConfig& cfg, DeformationChain& chain, Recorder& rec) {
    const GammaPair gp = gamma_pair(chain.at(cfg.kappa), chain.at(cfg.kappa + 1));
    rec.below("gamma.fit2", "Gamma2 is a degree-2 polynomial", gp.residual2, 1e-10);
    rec.below("gamma.fit1", "Gamma1 is a degree-1 polynomial", gp.residual1, 1e-10);
    rec.below("gamma.weight", "y(1-y) W^(k+1) = W^(k) Gamma2", gp.weight_residual, 1e-9);
    rec.below("gamma.derivative", "(W Gamma2)' = W Gamma1", gp.derivative_residual, 1e-9);
    const FamilyDescriptor& f = chain.family();
    if (f.name == "c1") {
        const int n = static_cast<int>(f.param("n"));
        rec.below("gamma.c1_display2", "closed-form c1 Gamma2", coeff_distance(gp.gamma2, c1_gamma2_display(n, cfg.kappa)),
                  1e-10);
        rec.below("gamma.c1_display1", "closed-form c1 Gamma1", coeff_distance(gp.gamma1, c1_gamma1_display(n, cfg.kappa)),
                  1e-10);
    }
    if (f.name == "su2" && f.N > 1) {
        const Real nu = cfg.kappa + 1, l = Real(f.N - 1) / 2;
        Real worst = 0;
        for (Real y : holdout_nodes()) {
            const Matrix rhs = su2_gamma2_closed_form(f.N - 1, nu, y, 1);
            worst = std::max(worst, max_abs(4 * nu * (nu + 2 * l) / (l * l) * gp.gamma2(y) - rhs) /
                                        std::max<Real>(1, max_abs(rhs)));
        }
        rec.below("gamma.su2_closed_form", "4nu(nu+2ell)/ell^2 Gamma2 closed form", worst, 1e-9);
    }
}

void shift_suite(const SuiteConfig& cfg, DeformationChain& chain, Recorder& rec) {
    const DeformedFamily& df = chain.at(cfg.kappa);
    const DeformedFamily& nx = chain.at(cfg.kappa + 1);
    const GammaPair gp = gamma_pair(df, nx);
    const MonicSequence seq = monic_mvops(df, cfg.dmax, cfg.order);
    const MonicSequence next = monic_mvops(nx, std::max(cfg.dmax - 1, 0), cfg.order);
    rec.below("shift.derivative", "dQ_d^(k) = d Q_{d-1}^(k+1)", shift_check(seq, next), 1e-9);
    rec.below("shift.gamma_operator", "P -> P'' G2^* + P' G1^* symmetric",
              symmetry_check(seq, [&gp](const MatPoly& p) { return apply_gamma(p, gp); }), 1e-9);
}

void rodrigues_suite(const SuiteConfig& cfg, DeformationChain& chain, Recorder& rec) {
    const int top = std::min(cfg.dmax, 5);
    const MonicSequence seq = monic_mvops(chain.at(cfg.kappa), top, cfg.order);
    Real worst = 0, fit = 0;
    for (int d = 0; d <= top; ++d) {
        const RodriguesResult r = rodrigues(chain, cfg.kappa, d);
        worst = std::max(worst, coeff_distance(r.Q, seq.polys[d]) / std::max<Real>(1, seq.polys[d].max_abs()));
        fit = std::max(fit, r.fit_residual);
    }
    rec.below("rodrigues.quotient", "d^d W^(k+d) (W^(k))^-1 is polynomial", fit, 1e-8, {{"degree_max", top}});
    rec.below("rodrigues.vs_gram_schmidt", "Rodrigues Q_d = Gram-Schmidt Q_d", worst, 1e-8, {{"degree_max", top}});
    if (top < 1) {
        rec.skipped("raising", "needs dmax >= 1");
        return;
    }
    const RaisingReport rr = raising_check(chain, cfg.kappa, top, cfg.seed);
    rec.below("raising.adjoint", "<dP, Q>^(k+1) = -<P, Q Xi>^(k)", rr.adjoint, 1e-8, {{"seed", cfg.seed}});
    rec.below("raising.monic_relation", "G_n^(k+1) G_{n+1}^-1 Q_{n+1} = dQ_n^(k+1) G2^* + Q_n^(k+1) G1^*",
              rr.monic_relation, 1e-8);
    rec.below("raising.gamma1", "G1^* = G_0 G_1^-1 Q_1", rr.gamma1_from_monic, 1e-8);
    if (top >= 2)
        rec.below("raising.gamma2", "G2^* = G_1^(k+1) G_2^-1 Q_2 - Q_1^(k+1) G1^*", rr.gamma2_from_monic, 1e-8);
    else rec.skipped("raising.gamma2", "needs dmax >= 2");
}

void commutator_suite(const SuiteConfig& cfg, Recorder& rec) {
    const FamilyDescriptor& f = cfg.family;
    if (f.name != "su2" || f.N < 2) {
        rec.skipped("commutator", "first-order commuting operator is only available for su2 with ell >= 1/2");
        return;
    }
    const CommutingReport r = commuting_E_check(f.N - 1, cfg.kappa + 1, cfg.dmax, EVariant::Corrected);
    rec.below("commutator.vanishes", "[E + kappa B1, D] = 0 on y^k E_rs", r.commutator, 1e-10);
    rec.below("commutator.eigen", "Q_n (E + kappa B1) = (n B1 + A0 + kappa B1) Q_n", r.eigen, 1e-9);
    rec.below("commutator.symmetric", "E + kappa B1 symmetric for W^(k)", r.symmetric_same, 1e-9);
}

void krawtchouk_suite(const SuiteConfig& cfg, Recorder& rec) {
    const FamilyDescriptor& f = cfg.family;
    if (f.name != "su2") {
        rec.skipped("krawtchouk", "exact Krawtchouk layer belongs to su2");
        return;
    }
    const int twoEll = f.N - 1;
    const std::pair<const char*, ExactReport> reps[] = {
        {"krawtchouk.orthogonality", verify_orthogonality_identities(twoEll)},
        {"krawtchouk.recurrences", verify_recurrences(twoEll)},
        {"krawtchouk.kernel", check_kernel(twoEll)},
        {"krawtchouk.s_diagonalization", check_S_diagonalization(twoEll)},
    };
    for (const auto& [id, rep] : reps)
        rec.exact(id, "exact rational identities", rep.failures(), {{"identities", rep.records.size()}});
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all",       "ortho",      "symmetry",  "shift",
                                                "rodrigues", "gamma",      "commutator", "krawtchouk"};
    return names;
}

std::vector<CheckResult> run_suite(const SuiteConfig& cfg) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw std::invalid_argument("unknown suite " + cfg.suite);
    if (cfg.dmax < 0) throw std::invalid_argument("dmax must be nonnegative");
    if (cfg.kappa < 0) throw std::invalid_argument("kappa must be nonnegative");

    std::vector<CheckResult> out;
    Recorder rec(cfg, out);
    DeformationChain chain(cfg.family);
    const std::pair<std::string, std::function<void()>> parts[] = {
        {"ortho", [&] { ortho_suite(cfg, chain, rec); }},
        {"symmetry", [&] { symmetry_suite(cfg, chain, rec); }},
        {"gamma", [&] { gamma_suite(cfg, chain, rec); }},
        {"shift", [&] { shift_suite(cfg, chain, rec); }},
        {"rodrigues", [&] { rodrigues_suite(cfg, chain, rec); }},
        {"commutator", [&] { commutator_suite(cfg, rec); }},
        {"krawtchouk", [&] { krawtchouk_suite(cfg, rec); }},
    };
    for (const auto& [name, run] : parts) {
        if (cfg.suite != "all" && cfg.suite != name) continue;
        try {
            run();
        } catch (const std::exception& e) {
            rec.error(name, e.what());
        }
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == "fail"; });
}

Json check_to_json(const CheckResult& c) {
    Json j = {{"id", c.id},
              {"ref", c.ref},
              {"params", c.params},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"status", c.status}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

}  // namespace mvop
