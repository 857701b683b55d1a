#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hilfer/operator.hpp"
#include "hilfer/problem.hpp"

namespace hilfer {

// A fully materialized run configuration. Numeric fields in the JSON
// document may be plain numbers or expression strings ("7/6", "sqrt(2)").
struct RunConfig {
    ProblemSpec problem;
    std::size_t grid_n = 2048;
    double tol = 1e-10;
    int max_iter = 200;
    FidelityMode mode = FidelityMode::PaperFaithful;

    double zeta_r_lo = 0.0;
    double zeta_r_hi = 0.0; // defaults to T when unset
    int zeta_samples = 512;

    struct StabilityExperiment {
        Expr z;
        std::string z_text;
        double eps = 0.0;
    };
    std::vector<StabilityExperiment> experiments;

    // rho x lambda sweep over built-in psi families for batch solves
    struct Sweep {
        std::vector<std::string> families; // "power_exponential", "tangent"
        std::vector<double> rhos;
        std::vector<double> lambdas;
    };
    std::optional<Sweep> sweep;

    std::map<std::string, double> paper_reference;
};

// Throws ConfigError with a field path on any schema or expression problem.
RunConfig load_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);

// Embedded demonstration scenarios; ConfigError on unknown names.
std::vector<std::string> builtin_scenario_names();
nlohmann::json builtin_scenario_json(const std::string& name);
RunConfig builtin_scenario(const std::string& name);

} // namespace hilfer
