#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hilfer/expr.hpp"

namespace hilfer {

// Euler Gamma for x > 0, Lanczos approximation, relative error <= 1e-13
// on the range of orders that occur here (all in (0, 4]).
double gamma_fn(double x);

// The weight function psi: increasing, C^1, psi' > 0 on (a,T). Holds the
// interval J=[a,T] and an optional closed-form inverse. Immutable after
// construction; construction validates monotonicity on a dense sample.
class PsiFunction {
public:
    using Fn = std::function<double(double)>;

    // Expression-backed psi. psi_prime may be omitted, in which case
    // central differences with step 1e-6*(T-a) are used.
    static PsiFunction from_exprs(const Expr& psi, std::optional<Expr> psi_prime,
                                  double a, double T,
                                  std::optional<Expr> inverse_hint = std::nullopt);

    // Built-in families.
    static PsiFunction linear(double a, double T);                    // psi(t)=t
    static PsiFunction exp_saturating(double c, double a, double T);  // 1-e^{-ct}
    static PsiFunction power_exponential(double rho, double a, double T); // 3^{t^rho+2t}-1
    static PsiFunction tangent(double rho, double a, double T);       // tan(pi t sqrt(rho)/4)

    double operator()(double t) const;  // psi(t), checked t in [a,T]
    double prime(double t) const;       // psi'(t)
    double inverse(double tau) const;   // unique t with psi(t)=tau

    double a() const { return a_; }
    double T() const { return T_; }
    double tau_a() const { return tau_a_; }
    double tau_T() const { return tau_T_; }

    // (psi(t)-psi(a))^sigma; throws SingularAtLeftEndpoint for sigma<0, t=a.
    double power(double sigma, double t) const;

private:
    PsiFunction(Fn psi, Fn prime, double a, double T, Fn inverse);
    void validate() const;

    Fn psi_, prime_, inverse_; // inverse_ may be empty (bisection fallback)
    double a_, T_, tau_a_, tau_T_;
};

// psi_a^{sigma} notation as a first-class value.
struct PsiPower {
    PsiFunction base;
    double exponent;
    double operator()(double t) const { return base.power(exponent, t); }
};

} // namespace hilfer
