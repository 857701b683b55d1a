#include "hilfer/config.hpp"

#include <cmath>
#include <fstream>

#include "hilfer/errors.hpp"

namespace hilfer {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const std::string& name) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) fail(path + "." + name, "missing");
    return *it;
}

const json* opt_field(const json& j, const std::string& name) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(name);
    return it == j.end() ? nullptr : &*it;
}

// A number or a constant expression string ("7/6", "3^(1/4)/10").
double as_number(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return eval(parse(v.get<std::string>()), {});
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    fail(path, "expected a number or expression string");
}

Expr as_expr(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected an expression string");
    try {
        return parse(v.get<std::string>());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

std::vector<double> as_number_list(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::shared_ptr<const PsiFunction> load_psi(const json& j, const std::string& path,
                                            double a, double T) {
    if (const json* fam = opt_field(j, "family")) {
        std::string name = fam->get<std::string>();
        if (name == "linear")
            return std::make_shared<PsiFunction>(PsiFunction::linear(a, T));
        if (name == "exp_saturating")
            return std::make_shared<PsiFunction>(PsiFunction::exp_saturating(
                as_number(field(j, path, "c"), path + ".c"), a, T));
        if (name == "power_exponential")
            return std::make_shared<PsiFunction>(PsiFunction::power_exponential(
                as_number(field(j, path, "rho"), path + ".rho"), a, T));
        if (name == "tangent")
            return std::make_shared<PsiFunction>(PsiFunction::tangent(
                as_number(field(j, path, "rho"), path + ".rho"), a, T));
        fail(path + ".family", "unknown psi family '" + name + "'");
    }
    Expr psi = as_expr(field(j, path, "expr"), path + ".expr");
    std::optional<Expr> prime, inverse;
    if (const json* p = opt_field(j, "prime")) prime = as_expr(*p, path + ".prime");
    if (const json* p = opt_field(j, "inverse")) inverse = as_expr(*p, path + ".inverse");
    try {
        return std::make_shared<PsiFunction>(
            PsiFunction::from_exprs(psi, prime, a, T, inverse));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

VOperator load_v(const json* j, const std::string& path) {
    if (!j) return VOperator::identity();
    std::string kind = field(*j, path, "kind").get<std::string>();
    if (kind == "identity") return VOperator::identity();
    if (kind == "time_warp")
        return VOperator::time_warp(as_expr(field(*j, path, "warp"), path + ".warp"));
    fail(path + ".kind", "unknown V kind '" + kind + "' (custom hooks are API-only)");
}

ProblemSpec load_problem(const json& j, const std::string& path) {
    ProblemSpec spec;
    spec.order.nu = as_number(field(j, path, "nu"), path + ".nu");
    spec.order.beta = as_number(field(j, path, "beta"), path + ".beta");
    spec.lambda = as_number(field(j, path, "lambda"), path + ".lambda");
    double a = as_number(field(j, path, "a"), path + ".a");
    double T = as_number(field(j, path, "T"), path + ".T");
    spec.psi = load_psi(field(j, path, "psi"), path + ".psi", a, T);
    spec.alphas = as_number_list(field(j, path, "alphas"), path + ".alphas");
    spec.betas = as_number_list(field(j, path, "betas"), path + ".betas");
    spec.etas = as_number_list(field(j, path, "etas"), path + ".etas");
    spec.xi = as_number(field(j, path, "xi"), path + ".xi");
    spec.f = as_expr(field(j, path, "f"), path + ".f");
    spec.g = as_expr(field(j, path, "g"), path + ".g");
    spec.V = load_v(opt_field(j, "V"), path + ".V");
    if (const json* lip = opt_field(j, "lipschitz")) {
        LipschitzData data;
        data.N = as_number(field(*lip, path + ".lipschitz", "N"), path + ".lipschitz.N");
        if (const json* l1 = opt_field(*lip, "l1")) {
            data.l1 = as_expr(*l1, path + ".lipschitz.l1");
            data.l2 = as_expr(field(*lip, path + ".lipschitz", "l2"), path + ".lipschitz.l2");
            data.l3 = as_expr(field(*lip, path + ".lipschitz", "l3"), path + ".lipschitz.l3");
        }
        spec.lipschitz = std::move(data);
    }
    if (const json* gr = opt_field(j, "growth")) {
        GrowthData data;
        const std::string gp = path + ".growth";
        data.p1 = as_expr(field(*gr, gp, "p1"), gp + ".p1");
        data.p2 = as_expr(field(*gr, gp, "p2"), gp + ".p2");
        data.p3 = as_expr(field(*gr, gp, "p3"), gp + ".p3");
        data.phi1 = as_expr(field(*gr, gp, "phi1"), gp + ".phi1");
        data.phi2 = as_expr(field(*gr, gp, "phi2"), gp + ".phi2");
        data.phi3 = as_expr(field(*gr, gp, "phi3"), gp + ".phi3");
        spec.growth = std::move(data);
    }
    if (const json* p = opt_field(j, "p_bound"))
        spec.p_bound = as_expr(*p, path + ".p_bound");
    if (const json* r = opt_field(j, "relax_g_at_a")) spec.relax_g_at_a = r->get<bool>();
    return spec;
}

} // namespace

RunConfig load_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("top level must be a JSON object");
    RunConfig cfg;
    cfg.problem = load_problem(field(doc, "", "problem"), "problem");

    if (const json* grid = opt_field(doc, "grid")) {
        if (const json* n = opt_field(*grid, "n")) {
            long v = n->get<long>();
            if (v < 2) fail("grid.n", "must be at least 2");
            cfg.grid_n = static_cast<std::size_t>(v);
        }
    }
    if (const json* solver = opt_field(doc, "solver")) {
        if (const json* tol = opt_field(*solver, "tol"))
            cfg.tol = as_number(*tol, "solver.tol");
        if (const json* mi = opt_field(*solver, "max_iter")) cfg.max_iter = mi->get<int>();
        if (!(cfg.tol > 0.0)) fail("solver.tol", "must be positive");
        if (cfg.max_iter < 1) fail("solver.max_iter", "must be at least 1");
    }
    if (const json* mode = opt_field(doc, "mode")) {
        std::string m = mode->get<std::string>();
        if (m == "paper-faithful")
            cfg.mode = FidelityMode::PaperFaithful;
        else if (m == "corrected")
            cfg.mode = FidelityMode::Corrected;
        else
            fail("mode", "expected 'paper-faithful' or 'corrected'");
    }

    cfg.zeta_r_hi = cfg.problem.psi->T();
    if (const json* z = opt_field(doc, "zeta")) {
        if (const json* lo = opt_field(*z, "r_lo")) cfg.zeta_r_lo = as_number(*lo, "zeta.r_lo");
        if (const json* hi = opt_field(*z, "r_hi")) cfg.zeta_r_hi = as_number(*hi, "zeta.r_hi");
        if (const json* s = opt_field(*z, "samples")) cfg.zeta_samples = s->get<int>();
        if (!(cfg.zeta_r_hi > cfg.zeta_r_lo)) fail("zeta", "r_hi must exceed r_lo");
        if (cfg.zeta_samples < 2) fail("zeta.samples", "must be at least 2");
    }

    if (const json* st = opt_field(doc, "stability")) {
        const json& exps = field(*st, "stability", "experiments");
        if (!exps.is_array()) fail("stability.experiments", "expected an array");
        for (std::size_t i = 0; i < exps.size(); ++i) {
            std::string p = "stability.experiments[" + std::to_string(i) + "]";
            RunConfig::StabilityExperiment e;
            const json& zj = field(exps[i], p, "z");
            e.z = as_expr(zj, p + ".z");
            e.z_text = zj.get<std::string>();
            e.eps = as_number(field(exps[i], p, "eps"), p + ".eps");
            cfg.experiments.push_back(std::move(e));
        }
    }

    if (const json* sw = opt_field(doc, "sweep")) {
        RunConfig::Sweep sweep;
        const json& fams = field(*sw, "sweep", "families");
        for (const auto& f : fams) sweep.families.push_back(f.get<std::string>());
        sweep.rhos = as_number_list(field(*sw, "sweep", "rhos"), "sweep.rhos");
        sweep.lambdas = as_number_list(field(*sw, "sweep", "lambdas"), "sweep.lambdas");
        for (const auto& f : sweep.families)
            if (f != "power_exponential" && f != "tangent")
                fail("sweep.families", "unknown family '" + f + "'");
        cfg.sweep = std::move(sweep);
    }

    if (const json* refs = opt_field(doc, "paper_reference")) {
        for (auto it = refs->begin(); it != refs->end(); ++it)
            cfg.paper_reference[it.key()] = as_number(it.value(), "paper_reference." + it.key());
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
    return load_config(doc);
}

namespace {

json base_example_problem() {
    return {
        {"nu", "3/2"},
        {"beta", "1/2"},
        {"lambda", "1/100"},
        {"a", 0},
        {"T", "7/6"},
        {"psi", {{"family", "exp_saturating"}, {"c", "sqrt(2)"}}},
        {"alphas", {"1", "2"}},
        {"betas", {"1/3", "2/5"}},
        {"etas", {"1/6", "5/6"}},
        {"xi", "1"},
        {"g", "ln(1+u^2*sqrt(3))/10"},
    };
}

json scenario_i() {
    json problem = base_example_problem();
    problem["f"] =
        "cos(t)/(1+t) + exp(-sin(t)^2)/sqrt(25+t)*abs(u)/(2+abs(u))"
        " + (2*t-1)^2/6*(cos(pi/2*v) + abs(w)/(3+abs(w)))";
    problem["V"] = {{"kind", "time_warp"}, {"warp", "2*t/(1+t)"}};
    problem["lipschitz"] = {
        {"l1", "exp(-sin(t)^2)/(2*sqrt(25+t))"},
        {"l2", "pi*(2*t-1)^2/12"},
        {"l3", "(2*t-1)^2/18"},
        {"N", "3^(1/4)/10"},
    };
    json doc;
    doc["problem"] = problem;
    doc["grid"] = {{"n", 2048}};
    doc["solver"] = {{"tol", 1e-10}, {"max_iter", 5000}};
    json exps = json::array();
    exps.push_back({{"z", "1/100"}, {"eps", "1/100"}});
    exps.push_back({{"z", "1/1000"}, {"eps", "1/1000"}});
    doc["stability"] = {{"experiments", exps}};
    doc["paper_reference"] = {
        {"lambda_T_mu", 0.668728}, {"delta", -1.94081},   {"theta", 1.34089},
        {"phi", 1.73186},          {"omega", 0.9140092},  {"banach_value", 0.976884},
        {"c_f", 58.007},           {"xi_const", 0.0801944},
    };
    return doc;
}

json scenario_ii() {
    json problem = base_example_problem();
    problem["f"] =
        "exp(-sqrt(t))/(1+t)*(37/500)*u"
        " + (29/125)*(t-t^2)/(2+t)*(3+abs(v)/(1+abs(v)))"
        " + (3/10)*exp(sin(3*pi*t/7))/sqrt(16+t^2)*(2*w^3+1/4)";
    problem["lipschitz"] = {{"N", "3^(1/4)/10"}};
    problem["growth"] = {
        {"p1", "(37/500)*exp(-sqrt(t))"},
        {"p2", "(29/125)*(t-t^2)/2"},
        {"p3", "(3/10)*exp(sin(3*pi*t/7))/4"},
        {"phi1", "r"},
        {"phi2", "3+r/(1+r)"},
        {"phi3", "2*r^3+1/4"},
    };
    json doc;
    doc["problem"] = problem;
    doc["grid"] = {{"n", 2048}};
    doc["zeta"] = {{"r_lo", 0}, {"r_hi", "7/6"}, {"samples", 512}};
    doc["paper_reference"] = {{"xi_const", 0.0801944}};
    return doc;
}

json scenario_iii() {
    json problem = base_example_problem();
    problem["lambda"] = 0;
    problem["psi"] = {{"family", "power_exponential"}, {"rho", "11/10"}};
    problem["f"] = "1";
    problem["g"] = "1";
    problem["relax_g_at_a"] = true;
    problem["lipschitz"] = {{"N", 0}};
    problem["p_bound"] = "exp(t)";
    json doc;
    doc["problem"] = problem;
    // psi spans [0, ~48] here, so the tau grid is finer than the default
    doc["grid"] = {{"n", 4096}};
    doc["solver"] = {{"tol", 1e-10}, {"max_iter", 50}};
    return doc;
}

json scenario_sweep() {
    json doc = scenario_iii();
    doc["sweep"] = {
        {"families", {"power_exponential", "tangent"}},
        {"rhos", {"11/10", "13/10", "15/10", "17/10", "19/10", "2"}},
        {"lambdas", {0, 0.01}},
    };
    return doc;
}

} // namespace

std::vector<std::string> builtin_scenario_names() {
    return {"example-4.1-i", "example-4.1-ii", "example-4.1-iii", "example-4.1-sweep"};
}

nlohmann::json builtin_scenario_json(const std::string& name) {
    if (name == "example-4.1-i") return scenario_i();
    if (name == "example-4.1-ii") return scenario_ii();
    if (name == "example-4.1-iii") return scenario_iii();
    if (name == "example-4.1-sweep") return scenario_sweep();
    throw ConfigError("unknown scenario '" + name + "'");
}

RunConfig builtin_scenario(const std::string& name) {
    return load_config(builtin_scenario_json(name));
}

} // namespace hilfer
