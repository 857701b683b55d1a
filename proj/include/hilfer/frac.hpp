#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hilfer/grid.hpp"
#include "hilfer/psi.hpp"

namespace hilfer {

// Quadrature weights for the psi-fractional integral of order alpha with
// upper limit X (in tau-coordinates), over the node set taus. taus must be
// strictly increasing with taus[0] = psi(a); X in (taus[0], taus.back()].
// On each subinterval the integrand is linearly interpolated and the
// singular moments of (X - tau)^{alpha-1} are integrated in closed form,
// so I^{alpha}u(X) ~ sum_j w[j]*u(tau_j). All weights are nonnegative.
std::vector<double> product_weights(const std::vector<double>& taus, double alpha, double X);

// I^{alpha,psi}f(t) = (1/Gamma(alpha)) int_a^t psi'(s)(psi(t)-psi(s))^{alpha-1} f(s) ds
// for a callable f of t. Uses a mesh of n subintervals in tau, graded
// quadratically toward tau=psi(a) so that endpoint power singularities of
// f (exponent > -1) keep second-order accuracy. If f is not finite at t=a
// the first subinterval is handled by a local power fit instead.
double frac_integral(const PsiFunction& psi, double alpha,
                     const std::function<double(double)>& f, double t,
                     std::size_t n = 2048);

// Same integral with f given by linear interpolation of a grid function.
double frac_integral_grid(const GridFunction& u, double alpha, double t);

// psi-Hilfer derivative of orders nu in (1,2], beta in [0,1]:
//   D^{nu,beta;psi} f = I^{beta(2-nu),psi} (d/dtau)^2 I^{(1-beta)(2-nu),psi} f.
// Validation-grade: the inner integral is evaluated on a 5-point tau
// stencil of half-width delta_frac*(psi(T)-psi(a)) and differentiated by
// finite differences (shifted stencils near the ends); the outer integral
// uses product quadrature away from tau=psi(a) plus a power-fit patch on
// [psi(a), psi(a)+2*delta]. The solver never calls this.
double hilfer_derivative(const PsiFunction& psi, double nu, double beta,
                         const std::function<double(double)>& f, double t,
                         std::size_t n_inner = 512, double delta_frac = 0.01);

} // namespace hilfer
