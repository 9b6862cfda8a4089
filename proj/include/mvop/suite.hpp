#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvop/json_io.hpp"

namespace mvop {

struct CheckResult {
    std::string id;
    std::string ref;  ///< short name of the identity being checked
    Json params = Json::object();
    Real residual = 0;
    Real tolerance = 0;
    std::string status;  ///< "pass", "fail" or "skipped"
    std::string note;
};

struct SuiteConfig {
    FamilyDescriptor family;
    Real kappa = 0;
    int dmax = 8;
    std::string suite = "all";
    std::uint64_t seed = 20240611;
    Real tolerance_scale = 1;
    int order = 0;  ///< quadrature order override, 0 for the default policy
};

/// Suites: ortho, symmetry, shift, gamma, rodrigues, commutator, krawtchouk, or all.
const std::vector<std::string>& suite_names();

/// Runs the selected suite. Deterministic for a fixed config.
std::vector<CheckResult> run_suite(const SuiteConfig& cfg);

bool all_passed(const std::vector<CheckResult>& checks);

Json check_to_json(const CheckResult& c);

}  // namespace mvop
