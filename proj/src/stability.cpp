#include "hilfer/stability.hpp"

#include <cmath>

#include "hilfer/errors.hpp"

namespace hilfer {

void Perturbation::validate(const PsiFunction& psi) const {
    if (!z.valid()) throw InvalidProblem("perturbation needs an expression z");
    if (!(eps >= 0.0)) throw InvalidProblem("perturbation eps must be nonnegative");
    double a = psi.a(), T = psi.T();
    for (int j = 0; j <= 2048; ++j) {
        double t = a + (T - a) * j / 2048.0;
        if (std::fabs(eval(z, {{"t", t}})) > eps * (1.0 + 1e-12) + 1e-15)
            throw InvalidProblem("perturbation exceeds |z| <= eps");
    }
}

SolveResult perturbed_solve(const ProblemSpec& spec, const Perturbation& pert,
                            std::size_t n, double tol, int max_iter,
                            FidelityMode mode) {
    pert.validate(*spec.psi);
    ProblemSpec aug = spec;
    aug.f = Expr::sum(spec.f, pert.z);
    return picard_solve(aug, n, mode, tol, max_iter);
}

UhResult uh_check(const ProblemSpec& spec, const Perturbation& pert,
                  std::size_t n, double tol, int max_iter, FidelityMode mode) {
    auto report = compute_constants(spec, mode);
    auto [cf, phi_f] = ulam_constant(report); // throws NotContractive

    auto base = picard_solve(spec, n, mode, tol, max_iter);
    auto pert_res = perturbed_solve(spec, pert, n, tol, max_iter, mode);

    UhResult res;
    for (std::size_t j = 0; j < base.u.values().size(); ++j)
        res.sup_diff = std::max(res.sup_diff,
                                std::fabs(base.u.values()[j] - pert_res.u.values()[j]));
    res.bound = phi_f(pert.eps);
    res.pass = res.sup_diff <= res.bound + 2.0 * tol;
    return res;
}

} // namespace hilfer
