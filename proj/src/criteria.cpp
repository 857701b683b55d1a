#include "hilfer/criteria.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hilfer/errors.hpp"

namespace hilfer {

namespace {

constexpr int kMaxSamples = 10000;

double sup_on_grid(const PsiFunction& psi, const std::function<double(double)>& fn) {
    double a = psi.a(), T = psi.T();
    double m = 0.0;
    for (int j = 0; j <= kMaxSamples; ++j) {
        double t = a + (T - a) * j / kMaxSamples;
        m = std::max(m, std::fabs(fn(t)));
    }
    return m;
}

double sup_expr(const PsiFunction& psi, const Expr& e) {
    return sup_on_grid(psi, [&](double t) { return eval(e, {{"t", t}}); });
}

nlohmann::json verdict_json(const Verdict& v) {
    return {{"holds", v.holds}, {"reason", v.reason}};
}

} // namespace

CriteriaReport compute_constants(const ProblemSpec& spec, FidelityMode mode) {
    spec.validate();
    const PsiFunction& psi = *spec.psi;
    double nu = spec.order.nu;
    double mu = spec.order.mu();
    double T = psi.T();

    CriteriaReport rep;
    rep.delta = compute_delta(spec);
    rep.k = psi.power(mu - 1.0, T) / (std::fabs(rep.delta) * gamma_fn(mu));

    double bracket = psi.power(2.0 - mu + nu, T) / gamma_fn(3.0 - mu + nu);
    double phi_sum = psi.power(3.0 - mu, T) / gamma_fn(4.0 - mu);
    for (std::size_t i = 0; i < spec.etas.size(); ++i) {
        double e = spec.etas[i];
        double coeff = mode == FidelityMode::PaperFaithful ? psi(e) : psi.prime(e);
        bracket += std::fabs(spec.alphas[i]) * psi.power(nu, e) / gamma_fn(nu + 1.0);
        bracket += std::fabs(spec.betas[i]) * coeff * psi.power(nu - 1.0, e) / gamma_fn(nu);
        phi_sum += std::fabs(spec.alphas[i]) * psi.power(1.0, e);
        phi_sum += std::fabs(spec.betas[i]) * psi.prime(e);
    }
    rep.theta = psi.power(nu, T) / gamma_fn(nu + 1.0) + rep.k * bracket;
    rep.phi = rep.k * phi_sum + psi.power(1.0, T);

    if (spec.lipschitz) {
        const auto& lip = *spec.lipschitz;
        rep.N = lip.N;
        rep.xi_const = std::fabs(spec.lambda) * rep.phi + rep.k * lip.N;
        if (lip.l1.valid() && lip.l2.valid() && lip.l3.valid()) {
            rep.l1_star = sup_expr(psi, lip.l1);
            rep.l2_star = sup_expr(psi, lip.l2);
            rep.l3_star = sup_expr(psi, lip.l3);
            rep.lambda_T_mu = *rep.l1_star + *rep.l2_star +
                              *rep.l3_star * psi.power(2.0 - mu, T) / gamma_fn(3.0 - mu);
            rep.omega = *rep.lambda_T_mu * rep.theta + std::fabs(spec.lambda) * rep.phi;
            rep.banach_value = *rep.omega + rep.k * lip.N;
            if (*rep.banach_value < 1.0)
                rep.c_f = rep.theta / (1.0 - *rep.banach_value);
        }
    }
    return rep;
}

Verdict check_banach(const ProblemSpec& spec, CriteriaReport& report) {
    if (!spec.lipschitz) throw MissingMetadata("lipschitz (l1, l2, l3, N)");
    if (!report.banach_value) throw MissingMetadata("lipschitz bound functions l1, l2, l3");
    const PsiFunction& psi = *spec.psi;
    double q = *report.banach_value;
    Verdict v;
    if (q < 1.0) {
        double L = sup_on_grid(psi, [&](double t) {
            return eval(spec.f, {{"t", t}, {"u", 0.0}, {"v", 0.0}, {"w", 0.0}});
        });
        report.r_min = (L * report.theta + report.k * spec.lipschitz->N * psi.a()) / (1.0 - q);
        v.holds = true;
        v.reason = "contraction value " + std::to_string(q) + " < 1";
    } else {
        v.holds = false;
        v.reason = "contraction value " + std::to_string(q) + " >= 1";
    }
    report.banach = v;
    return v;
}

ZetaFunction::ZetaFunction(const ProblemSpec& spec, const CriteriaReport& report) {
    if (!spec.growth) throw MissingMetadata("growth (p_i, phi_i)");
    if (!report.xi_const) throw MissingMetadata("lipschitz N (for Xi)");
    const PsiFunction& psi = *spec.psi;
    const auto& gr = *spec.growth;
    phi1_ = gr.phi1;
    phi2_ = gr.phi2;
    phi3_ = gr.phi3;
    p1s_ = sup_expr(psi, gr.p1);
    p2s_ = sup_expr(psi, gr.p2);
    p3s_ = sup_expr(psi, gr.p3);
    theta_ = report.theta;
    kNa_ = report.k * report.N.value_or(0.0) * psi.a();
    xi_ = *report.xi_const;
    double mu = spec.order.mu();
    w_scale_ = psi.power(2.0 - mu, psi.T()) / gamma_fn(3.0 - mu);
}

double ZetaFunction::operator()(double r) const {
    double num = (p1s_ * eval(phi1_, {{"r", r}}) + p2s_ * eval(phi2_, {{"r", r}}) +
                  p3s_ * eval(phi3_, {{"r", w_scale_ * r}})) *
                     theta_ +
                 kNa_;
    return num / (1.0 - xi_) - r;
}

double zeta_fn(const ProblemSpec& spec, const CriteriaReport& report, double r) {
    return ZetaFunction(spec, report)(r);
}

Verdict check_sadovskii(const ProblemSpec& spec, CriteriaReport& report,
                        double r_lo, double r_hi) {
    if (!spec.growth) throw MissingMetadata("growth (p_i, phi_i)");
    if (!report.xi_const) throw MissingMetadata("lipschitz N (for Xi)");
    Verdict v;
    if (!(*report.xi_const < 1.0)) {
        v.holds = false;
        v.reason = "Xi = " + std::to_string(*report.xi_const) + " >= 1";
        report.sadovskii = v;
        return v;
    }

    const int samples = 512;
    ZetaFunction zeta(spec, report);
    int first_neg = -1;
    std::vector<double> rs(samples + 1), zs(samples + 1);
    for (int j = 0; j <= samples; ++j) {
        rs[j] = r_lo + (r_hi - r_lo) * j / samples;
        zs[j] = zeta(rs[j]);
        if (first_neg < 0 && zs[j] < 0.0) first_neg = j;
    }
    if (first_neg < 0) {
        v.holds = false;
        v.reason = "zeta(r) >= 0 on the whole scan range";
        report.sadovskii = v;
        return v;
    }
    // bisect each flank of the negative region to 1e-8
    auto bisect = [&](double lo, double hi) {
        // sign change between lo and hi
        double flo = zeta(lo);
        while (hi - lo > 1e-8) {
            double mid = 0.5 * (lo + hi);
            double fm = zeta(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    int last_neg = first_neg;
    while (last_neg < samples && zs[last_neg + 1] < 0.0) ++last_neg;
    double left = first_neg == 0 ? rs[0] : bisect(rs[first_neg - 1], rs[first_neg]);
    double right = last_neg == samples ? rs[samples] : bisect(rs[last_neg], rs[last_neg + 1]);
    report.zeta_negative_interval = {left, right};
    v.holds = true;
    v.reason = "Xi < 1 and zeta < 0 on [" + std::to_string(left) + ", " +
               std::to_string(right) + "]";
    report.sadovskii = v;
    return v;
}

Verdict check_burton_kirk(const ProblemSpec& spec, CriteriaReport& report) {
    if (!spec.p_bound) throw MissingMetadata("p (uniform bound on |f|)");
    if (!report.xi_const) throw MissingMetadata("lipschitz N (for Xi)");
    Verdict v;
    if (*report.xi_const < 1.0) {
        double pnorm = sup_expr(*spec.psi, *spec.p_bound);
        report.M_bound = (report.theta * pnorm +
                          spec.psi->a() * report.N.value_or(0.0) * report.k) /
                         (1.0 - *report.xi_const);
        v.holds = true;
        v.reason = "Xi = " + std::to_string(*report.xi_const) + " < 1";
    } else {
        v.holds = false;
        v.reason = "Xi = " + std::to_string(*report.xi_const) + " >= 1";
    }
    report.burton_kirk = v;
    return v;
}

std::pair<double, std::function<double(double)>> ulam_constant(const CriteriaReport& report) {
    if (!report.banach_value || !(*report.banach_value < 1.0))
        throw NotContractive(report.banach_value.value_or(
            std::numeric_limits<double>::quiet_NaN()));
    double cf = report.theta / (1.0 - *report.banach_value);
    return {cf, [cf](double eps) { return cf * eps; }};
}

nlohmann::json CriteriaReport::to_json() const {
    nlohmann::json j;
    j["delta"] = delta;
    j["theta"] = theta;
    j["phi"] = phi;
    j["k"] = k;
    auto put = [&j](const char* name, const std::optional<double>& v) {
        if (v) j[name] = *v;
    };
    put("l1_star", l1_star);
    put("l2_star", l2_star);
    put("l3_star", l3_star);
    put("N", N);
    put("lambda_T_mu", lambda_T_mu);
    put("omega", omega);
    put("banach_value", banach_value);
    put("xi_const", xi_const);
    put("r_min", r_min);
    put("c_f", c_f);
    put("M_bound", M_bound);
    if (banach) j["banach"] = verdict_json(*banach);
    if (sadovskii) j["sadovskii"] = verdict_json(*sadovskii);
    if (burton_kirk) j["burton_kirk"] = verdict_json(*burton_kirk);
    if (ulam) j["ulam"] = verdict_json(*ulam);
    if (zeta_negative_interval)
        j["zeta_negative_interval"] = {(*zeta_negative_interval)[0],
                                       (*zeta_negative_interval)[1]};
    if (!paper_reference.empty()) {
        nlohmann::json refs;
        for (const auto& [name, value] : paper_reference) {
            nlohmann::json entry;
            entry["reference"] = value;
            if (j.contains(name)) {
                entry["computed"] = j[name];
                entry["difference"] = j[name].get<double>() - value;
            }
            refs[name] = entry;
        }
        j["reference_values"] = refs;
    }
    return j;
}

} // namespace hilfer
