#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hilfer/operator.hpp"

namespace hilfer {

struct SolveResult {
    GridFunction u;
    int iterations = 0;
    std::vector<double> sup_diffs;   // ||u_{k+1} - u_k|| per iteration
    double fixed_point_residual = 0; // ||u - Au||
    std::array<double, 2> bc_residuals{0.0, 0.0}; // |u(a)|, nonlocal defect
    bool converged = false;
};

// Picard iteration u_{k+1} = A u_k from u0 (default: zero). Non-convergence
// is reported through the result, not thrown; the diagnostics are always
// filled in.
SolveResult picard_solve(const PicardOperator& op, double tol = 1e-10,
                         int max_iter = 200,
                         const GridFunction* u0 = nullptr);

// Convenience overload that builds the operator.
SolveResult picard_solve(const ProblemSpec& spec, std::size_t n,
                         FidelityMode mode = FidelityMode::PaperFaithful,
                         double tol = 1e-10, int max_iter = 200);

// ||u - Au|| in sup norm over the grid.
double fixed_point_residual(const PicardOperator& op, const GridFunction& u);

// (|u(a)|, |I^{2-mu,psi}u(T) - sum alpha_i u(eta_i) - sum beta_i u'(eta_i)
//  - g(u(xi))| / max(1, |lhs|, |rhs|)), i.e. the nonlocal defect is
// relative to the size of the condition. In paper-faithful mode u'(eta_i)
// follows the operator's
// own convention (via c1); in corrected mode it is a centered difference
// in t, which is the honest derivative of the iterate.
std::array<double, 2> boundary_residuals(const PicardOperator& op, const GridFunction& u);

} // namespace hilfer
