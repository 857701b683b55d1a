#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

#include "hilfer/operator.hpp"
#include "hilfer/problem.hpp"

namespace hilfer {

struct Verdict {
    bool holds = false;
    std::string reason;
};

// Closed-form constants of the solvability criteria plus per-criterion
// verdicts. Optional fields are absent (not zero) when the metadata they
// need is missing. paper_reference carries externally supplied reference
// values so reports can surface implementation-vs-reference deltas.
struct CriteriaReport {
    double delta = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double k = 0.0; // psi_a^{mu-1}(T) / (|Delta| Gamma(mu))

    std::optional<double> l1_star, l2_star, l3_star, N;
    std::optional<double> lambda_T_mu; // Lambda(T, mu)
    std::optional<double> omega;       // Lambda(T,mu)*Theta + |lambda|*Phi
    std::optional<double> banach_value; // Omega + k*N
    std::optional<double> xi_const;     // |lambda|*Phi + k*N
    std::optional<double> r_min;   // uniqueness-ball radius
    std::optional<double> c_f;     // Ulam-Hyers constant
    std::optional<double> M_bound; // a-priori bound of the hybrid criterion

    std::optional<Verdict> banach, sadovskii, burton_kirk, ulam;
    std::optional<std::array<double, 2>> zeta_negative_interval;

    std::map<std::string, double> paper_reference;

    nlohmann::json to_json() const;
};

// Evaluates Delta, Theta, Phi, k and (with Lipschitz metadata) Lambda,
// Omega, the contraction value, Xi and c_f. The l_i^* maxima are taken
// over 10^4 uniform t samples plus the endpoints.
CriteriaReport compute_constants(const ProblemSpec& spec,
                                 FidelityMode mode = FidelityMode::PaperFaithful);

// Contraction criterion: banach_value < 1. Fills r_min from
// L = sup_t |f(t,0,0,0)|. Throws MissingMetadata without Lipschitz data.
Verdict check_banach(const ProblemSpec& spec, CriteriaReport& report);

// zeta(r) = [(p1* phi1(r) + p2* phi2(r)
//            + p3* phi3(psi_a^{2-mu}(T) r / Gamma(3-mu))) Theta + kNa]
//           / (1 - Xi) - r.
// ZetaFunction caches the p_i^* maxima so repeated evaluation is cheap.
class ZetaFunction {
public:
    ZetaFunction(const ProblemSpec& spec, const CriteriaReport& report);
    double operator()(double r) const;

private:
    Expr phi1_, phi2_, phi3_;
    double p1s_, p2s_, p3s_, theta_, kNa_, xi_, w_scale_;
};

double zeta_fn(const ProblemSpec& spec, const CriteriaReport& report, double r);

// Condensing-operator criterion: Xi < 1 and zeta(r) < 0 somewhere in
// [r_lo, r_hi]. Scans 512 samples, refines each sign change by bisection
// to 1e-8 and records the negative interval found.
Verdict check_sadovskii(const ProblemSpec& spec, CriteriaReport& report,
                        double r_lo, double r_hi);

// Hybrid criterion: Xi < 1 under a uniform bound |f| <= p(t). Fills
// M_bound = (Theta ||p|| + aNk) / (1 - Xi).
Verdict check_burton_kirk(const ProblemSpec& spec, CriteriaReport& report);

// (c_f, phi_f) with c_f = Theta / (1 - banach_value), phi_f(eps) = c_f*eps.
// Throws NotContractive when banach_value >= 1.
std::pair<double, std::function<double(double)>> ulam_constant(const CriteriaReport& report);

} // namespace hilfer
