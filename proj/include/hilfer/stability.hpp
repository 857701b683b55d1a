#pragma once

#include "hilfer/criteria.hpp"
#include "hilfer/solver.hpp"

namespace hilfer {

// An equation perturbation z with sup |z(t)| <= eps; boundary conditions
// are left untouched.
struct Perturbation {
    Expr z; // function of t
    double eps = 0.0;

    // Sampled |z| <= eps check; throws InvalidProblem on violation.
    void validate(const PsiFunction& psi) const;
};

// Solves the problem with forcing f + z by Picard on the augmented
// operator (same grid, same mode).
SolveResult perturbed_solve(const ProblemSpec& spec, const Perturbation& pert,
                            std::size_t n, double tol = 1e-10, int max_iter = 200,
                            FidelityMode mode = FidelityMode::PaperFaithful);

struct UhResult {
    double sup_diff = 0.0; // ||u_pert - x||
    double bound = 0.0;    // c_f * eps
    bool pass = false;     // sup_diff <= bound + 2*tol
};

// Empirical Ulam-Hyers check: solve, perturb, compare against c_f*eps.
// Requires the contraction criterion to hold (NotContractive otherwise).
UhResult uh_check(const ProblemSpec& spec, const Perturbation& pert,
                  std::size_t n, double tol = 1e-10, int max_iter = 200,
                  FidelityMode mode = FidelityMode::PaperFaithful);

} // namespace hilfer
