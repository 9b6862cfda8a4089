#include "mvop/json_io.hpp"

#include <stdexcept>

namespace mvop {

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    const int n = static_cast<int>(j.size());
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(j[r].size()) != n) throw std::invalid_argument("matrix JSON must be square");
        for (int c = 0; c < n; ++c) m(r, c) = Complex(j[r][c][0].get<Real>(), j[r][c][1].get<Real>());
    }
    return m;
}

Json matpoly_to_json(const MatPoly& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(matrix_to_json(c));
    return {{"size", p.size()}, {"coeffs", coeffs}};
}

MatPoly matpoly_from_json(const Json& j) {
    const int n = j.at("size").get<int>();
    std::vector<Matrix> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(matrix_from_json(c));
    if (cs.empty()) return MatPoly(n);
    MatPoly p(std::move(cs));
    if (p.size() != n) throw std::invalid_argument("declared size does not match coefficients");
    return p;
}

Json exact_report_to_json(const ExactReport& rep) {
    Json out = Json::array();
    for (const auto& r : rep.records)
        out.push_back({{"identity", r.identity},
                       {"indices", r.indices},
                       {"status", r.ok() ? "pass" : "fail"},
                       {"lhs", to_string(r.lhs)},
                       {"rhs", to_string(r.rhs)},
                       {"kind", "exact"}});
    return out;
}

Json family_to_json(const FamilyDescriptor& fam) {
    Json params = Json::object();
    for (const auto& [k, v] : fam.params) params[k] = v;
    Json j = {{"name", fam.name},
              {"params", params},
              {"size", fam.N},
              {"alpha", fam.alpha},
              {"beta", fam.beta},
              {"T", matrix_to_json(fam.T)},
              {"S", matrix_to_json(fam.S)},
              {"R", matrix_to_json(fam.R)},
              {"sr_residual", fam.sr_residual},
              {"C", matrix_to_json(fam.C)},
              {"U", matrix_to_json(fam.U)},
              {"V", matrix_to_json(fam.V)},
              {"wpol_degree", fam.wpol_degree}};
    if (fam.E) {
        j["A0"] = matrix_to_json(fam.E->A0);
        j["B0"] = matrix_to_json(fam.E->B0);
        j["B1"] = matrix_to_json(fam.E->B1);
    }
    return j;
}

Json deformed_to_json(const DeformedFamily& df) {
    return {{"family", df.base.name},
            {"kappa", df.kappa},
            {"Tkappa", matrix_to_json(df.T)},
            {"Ckappa", matrix_to_json(df.D.C)},
            {"Ukappa", matrix_to_json(df.D.U)},
            {"Vkappa", matrix_to_json(df.D.V)},
            {"alpha_kappa", df.alpha_k()},
            {"beta_kappa", df.beta_k()},
            {"Wpol_kappa", matpoly_to_json(df.wpol)},
            {"certificates",
             {{"tsym_residual", df.tsol.tsym_residual},
              {"wpol_fit_residual", df.wpol_fit_residual},
              {"positivity", df.tsol.positive && df.min_eigenvalue > 0},
              {"min_eigenvalue", df.min_eigenvalue},
              {"t_method", df.tsol.method}}}};
}

}  // namespace mvop
