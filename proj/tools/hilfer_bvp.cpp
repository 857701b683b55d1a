#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hilfer/config.hpp"
#include "hilfer/criteria.hpp"
#include "hilfer/errors.hpp"
#include "hilfer/solver.hpp"
#include "hilfer/stability.hpp"

namespace {

using hilfer::ConfigError;
using hilfer::Error;
using hilfer::RunConfig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitInvalidProblem = 2;
constexpr int kExitConfig = 3;

struct CommonOpts {
    std::string config_path;
    std::string scenario;
    std::string out_path;
    int grid_n = 0;
    std::string mode;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file");
    cmd->add_option("--scenario", opts.scenario, "built-in scenario name");
    cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
    cmd->add_option("--grid-n", opts.grid_n, "override grid subinterval count");
    cmd->add_option("--mode", opts.mode, "paper-faithful | corrected");
}

RunConfig materialize(const CommonOpts& opts) {
    if (opts.config_path.empty() == opts.scenario.empty())
        throw ConfigError("exactly one of --config or --scenario is required");
    RunConfig cfg = opts.scenario.empty() ? hilfer::load_config_file(opts.config_path)
                                          : hilfer::builtin_scenario(opts.scenario);
    if (opts.grid_n > 0) {
        if (opts.grid_n < 2) throw ConfigError("--grid-n must be at least 2");
        cfg.grid_n = static_cast<std::size_t>(opts.grid_n);
    }
    if (!opts.mode.empty()) {
        if (opts.mode == "paper-faithful")
            cfg.mode = hilfer::FidelityMode::PaperFaithful;
        else if (opts.mode == "corrected")
            cfg.mode = hilfer::FidelityMode::Corrected;
        else
            throw ConfigError("--mode must be paper-faithful or corrected");
    }
    return cfg;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + out_path + "'");
    out << text;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string solution_csv(const hilfer::GridFunction& u) {
    std::string csv = "t,u\n";
    for (std::size_t j = 0; j <= u.n(); ++j) {
        csv += format_g17(u.t(j));
        csv += ',';
        csv += format_g17(u.values()[j]);
        csv += '\n';
    }
    return csv;
}

json solve_summary(const hilfer::SolveResult& res) {
    json j;
    j["converged"] = res.converged;
    j["iterations"] = res.iterations;
    j["fixed_point_residual"] = res.fixed_point_residual;
    j["bc_residual_left"] = res.bc_residuals[0];
    j["bc_residual_nonlocal"] = res.bc_residuals[1];
    j["final_sup_diff"] = res.sup_diffs.empty() ? 0.0 : res.sup_diffs.back();
    return j;
}

int cmd_criteria(const CommonOpts& opts) {
    RunConfig cfg = materialize(opts);
    auto report = hilfer::compute_constants(cfg.problem, cfg.mode);
    report.paper_reference = cfg.paper_reference;
    if (cfg.problem.lipschitz && report.banach_value) {
        auto banach = hilfer::check_banach(cfg.problem, report);
        if (banach.holds) {
            auto [cf, phi_f] = hilfer::ulam_constant(report);
            (void)phi_f;
            report.ulam = {true, "Ulam-Hyers stable with c_f = " + std::to_string(cf)};
        } else {
            report.ulam = {false, "contraction criterion fails"};
        }
    }
    if (cfg.problem.growth && report.xi_const)
        hilfer::check_sadovskii(cfg.problem, report, cfg.zeta_r_lo, cfg.zeta_r_hi);
    if (cfg.problem.p_bound && report.xi_const)
        hilfer::check_burton_kirk(cfg.problem, report);
    write_output(opts.out_path, report.to_json().dump(2) + "\n");
    return kExitOk;
}

int cmd_solve(const CommonOpts& opts) {
    RunConfig cfg = materialize(opts);

    if (cfg.sweep) {
        if (opts.out_path.empty())
            throw ConfigError("sweep solves need --out as a filename prefix");
        const auto& sw = *cfg.sweep;
        double a = cfg.problem.psi->a(), T = cfg.problem.psi->T();
        bool all_ok = true;
        for (const auto& family : sw.families) {
            for (double rho : sw.rhos) {
                for (double lam : sw.lambdas) {
                    hilfer::ProblemSpec spec = cfg.problem;
                    spec.lambda = lam;
                    spec.psi = std::make_shared<hilfer::PsiFunction>(
                        family == "tangent"
                            ? hilfer::PsiFunction::tangent(rho, a, T)
                            : hilfer::PsiFunction::power_exponential(rho, a, T));
                    auto res = hilfer::picard_solve(spec, cfg.grid_n, cfg.mode,
                                                    cfg.tol, cfg.max_iter);
                    all_ok = all_ok && res.converged;
                    char tag[96];
                    std::snprintf(tag, sizeof tag, "%s-%s-rho-%g-lambda-%g.csv",
                                  opts.out_path.c_str(), family.c_str(), rho, lam);
                    write_output(tag, solution_csv(res.u));
                }
            }
        }
        return all_ok ? kExitOk : kExitNotConverged;
    }

    auto res = hilfer::picard_solve(cfg.problem, cfg.grid_n, cfg.mode, cfg.tol,
                                    cfg.max_iter);
    std::cerr << solve_summary(res).dump(2) << "\n";
    write_output(opts.out_path, solution_csv(res.u));
    return res.converged ? kExitOk : kExitNotConverged;
}

int cmd_zeta_scan(const CommonOpts& opts) {
    RunConfig cfg = materialize(opts);
    auto report = hilfer::compute_constants(cfg.problem, cfg.mode);
    hilfer::ZetaFunction zeta(cfg.problem, report);
    std::string csv = "r,zeta\n";
    for (int j = 0; j <= cfg.zeta_samples; ++j) {
        double r = cfg.zeta_r_lo +
                   (cfg.zeta_r_hi - cfg.zeta_r_lo) * j / cfg.zeta_samples;
        csv += format_g17(r);
        csv += ',';
        csv += format_g17(zeta(r));
        csv += '\n';
    }
    write_output(opts.out_path, csv);
    return kExitOk;
}

int cmd_stability(const CommonOpts& opts) {
    RunConfig cfg = materialize(opts);
    if (cfg.experiments.empty())
        throw ConfigError("stability command needs stability.experiments");
    auto report = hilfer::compute_constants(cfg.problem, cfg.mode);
    auto [cf, phi_f] = hilfer::ulam_constant(report);

    hilfer::PicardOperator op(cfg.problem, cfg.grid_n, cfg.mode);
    auto base = hilfer::picard_solve(op, cfg.tol, cfg.max_iter);
    bool all_converged = base.converged;

    json table = json::array();
    for (const auto& exp : cfg.experiments) {
        hilfer::Perturbation pert{exp.z, exp.eps};
        auto pres = hilfer::perturbed_solve(cfg.problem, pert, cfg.grid_n, cfg.tol,
                                            cfg.max_iter, cfg.mode);
        all_converged = all_converged && pres.converged;
        double sup_diff = 0.0;
        for (std::size_t j = 0; j < base.u.values().size(); ++j)
            sup_diff = std::max(sup_diff, std::fabs(base.u.values()[j] -
                                                    pres.u.values()[j]));
        double bound = phi_f(exp.eps);
        json row;
        row["z"] = exp.z_text;
        row["eps"] = exp.eps;
        row["sup_diff"] = sup_diff;
        row["bound"] = bound;
        row["pass"] = sup_diff <= bound + 2.0 * cfg.tol;
        table.push_back(row);
    }
    json out;
    out["c_f"] = cf;
    out["experiments"] = table;
    write_output(opts.out_path, out.dump(2) + "\n");
    return all_converged ? kExitOk : kExitNotConverged;
}

json error_json(const char* kind, const std::string& message) {
    json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and criteria checker for sequential psi-Hilfer "
                 "fractional integro-differential boundary value problems"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* criteria = app.add_subcommand("criteria", "constants and criterion verdicts");
    auto* solve = app.add_subcommand("solve", "Picard solve, CSV of (t, u)");
    auto* zeta = app.add_subcommand("zeta-scan", "CSV of (r, zeta(r))");
    auto* stability = app.add_subcommand("stability", "Ulam-Hyers experiments");
    for (auto* cmd : {criteria, solve, zeta, stability}) add_common(cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (criteria->parsed()) return cmd_criteria(opts);
        if (solve->parsed()) return cmd_solve(opts);
        if (zeta->parsed()) return cmd_zeta_scan(opts);
        return cmd_stability(opts);
    } catch (const ConfigError& e) {
        std::cerr << error_json(e.kind(), e.what()).dump() << "\n";
        return kExitConfig;
    } catch (const hilfer::NotConverged& e) {
        std::cerr << error_json(e.kind(), e.what()).dump() << "\n";
        return kExitNotConverged;
    } catch (const Error& e) {
        std::cerr << error_json(e.kind(), e.what()).dump() << "\n";
        return kExitInvalidProblem;
    } catch (const std::exception& e) {
        std::cerr << error_json("Error", e.what()).dump() << "\n";
        return kExitInvalidProblem;
    }
}
