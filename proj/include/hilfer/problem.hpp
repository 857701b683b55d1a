#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hilfer/expr.hpp"
#include "hilfer/grid.hpp"
#include "hilfer/psi.hpp"

namespace hilfer {

// Orders of the sequential Hilfer pair: derivative orders nu and nu-1 of
// type beta. mu is always derived, never stored.
struct FracOrder {
    double nu;   // in (1,2]
    double beta; // in [0,1)

    double mu() const { return nu + beta * (2.0 - nu); }
    void validate() const;
};

// The (possibly nonlinear) operator V appearing in the forcing term.
// Must be nonexpansive in sup norm: ||Vu - Vv|| <= ||u - v||, ||Vu|| <= ||u||.
class VOperator {
public:
    enum class Kind { Identity, TimeWarp, Custom };
    using Hook = std::function<double(const GridFunction&, double)>;

    static VOperator identity();
    static VOperator time_warp(Expr warp); // t -> t', range inside [a,T]
    static VOperator custom(Hook hook);

    Kind kind() const { return kind_; }

    // (Vu)(t)
    double apply(const GridFunction& u, double t) const;

    // Sampled checks: warp range inside [a,T], nonexpansiveness and
    // norm bound against pseudo-random grid functions (fixed seed).
    void validate(const PsiFunction& psi) const;

private:
    VOperator(Kind kind, Expr warp, Hook hook)
        : kind_(kind), warp_(std::move(warp)), hook_(std::move(hook)) {}

    Kind kind_;
    Expr warp_;
    Hook hook_;
};

// The singular kernel K_t^nu(s) = psi'(s)(psi(t)-psi(s))^{nu-1}/Gamma(nu).
struct Kernel {
    std::shared_ptr<const PsiFunction> psi;
    double nu;

    double operator()(double t, double s) const;
};

// Lipschitz metadata for the uniqueness and stability criteria:
// |f(t,u1,v1,w1)-f(t,u2,v2,w2)| <= l1(t)|u1-u2|+l2(t)|v1-v2|+l3(t)|w1-w2|,
// |g(u1)-g(u2)| <= N|u1-u2|.
// The l_i may be left invalid when only the g-constant N is known; the
// Xi-based criteria need just N.
struct LipschitzData {
    Expr l1, l2, l3; // functions of t
    double N = 0.0;
};

// Growth metadata: |f(t,x1,x2,x3)| <= p1(t)phi1(|x1|)+p2(t)phi2(|x2|)+p3(t)phi3(|x3|)
// with phi_i nondecreasing; or a uniform bound |f| <= p(t).
struct GrowthData {
    Expr p1, p2, p3;       // functions of t
    Expr phi1, phi2, phi3; // nondecreasing functions of r
};

// Full problem data for
//   (D^{nu,beta;psi} + lambda D^{nu-1,beta;psi}) u = f(t, u, Vu, I^{2-mu,psi}u),
//   u(a) = 0,
//   I^{2-mu,psi}u(T) = sum alpha_i u(eta_i) + sum beta_i u'(eta_i) + g(u(xi)).
struct ProblemSpec {
    FracOrder order;
    double lambda = 0.0;
    std::shared_ptr<const PsiFunction> psi;
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<double> etas; // strictly increasing, inside (a, xi)
    double xi = 0.0;          // in (eta_m, T)
    Expr f;                   // variables t, u, v, w
    Expr g;                   // variable u
    VOperator V = VOperator::identity();

    std::optional<LipschitzData> lipschitz;
    std::optional<GrowthData> growth;
    std::optional<Expr> p_bound; // function of t, uniform bound on |f|

    // Accept constant g even though the boundary-condition derivation
    // assumes g(a)=0 (needed for the f==1, g==1 demonstration problem).
    bool relax_g_at_a = false;

    // Structural invariants; throws InvalidProblem on violation.
    void validate() const;
};

// Delta = psi_a(T) - sum (psi_a^{mu-2}(eta_i)/Gamma(mu-1))
//                        * (alpha_i psi_a(eta_i)/(mu-1) + beta_i).
// Throws DegenerateDelta when |Delta| <= 1e-12.
double compute_delta(const ProblemSpec& spec);

// F_u(t) = f(t, u(t), (Vu)(t), I^{2-mu,psi}u(t)).
double eval_Fu(const ProblemSpec& spec, const GridFunction& u, double t);

} // namespace hilfer
