#include "hilfer/problem.hpp"

#include <cmath>
#include <random>

#include "hilfer/errors.hpp"
#include "hilfer/frac.hpp"

namespace hilfer {

void FracOrder::validate() const {
    if (!(nu > 1.0 && nu <= 2.0)) throw InvalidProblem("nu must lie in (1,2]");
    if (!(beta >= 0.0 && beta < 1.0)) throw InvalidProblem("beta must lie in [0,1)");
}

VOperator VOperator::identity() { return VOperator(Kind::Identity, Expr(), nullptr); }

VOperator VOperator::time_warp(Expr warp) {
    return VOperator(Kind::TimeWarp, std::move(warp), nullptr);
}

VOperator VOperator::custom(Hook hook) {
    return VOperator(Kind::Custom, Expr(), std::move(hook));
}

double VOperator::apply(const GridFunction& u, double t) const {
    switch (kind_) {
        case Kind::Identity: return u.value_at(t);
        case Kind::TimeWarp: return u.value_at(eval(warp_, {{"t", t}}));
        case Kind::Custom: return hook_(u, t);
    }
    throw Error("corrupt VOperator");
}

void VOperator::validate(const PsiFunction& psi) const {
    double a = psi.a(), T = psi.T();
    if (kind_ == Kind::TimeWarp) {
        if (!warp_.valid()) throw InvalidProblem("time-warp V without a warp map");
        for (int j = 0; j <= 256; ++j) {
            double t = a + (T - a) * j / 256.0;
            double w = eval(warp_, {{"t", t}});
            double slack = 1e-9 * (T - a);
            if (w < a - slack || w > T + slack)
                throw InvalidProblem("V warp map leaves [a,T]");
        }
    }
    // sampled nonexpansiveness against pseudo-random grid functions
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto shared = std::shared_ptr<const PsiFunction>(&psi, [](const PsiFunction*) {});
    for (int trial = 0; trial < 4; ++trial) {
        auto u = GridFunction::zeros(shared, 64);
        auto v = GridFunction::zeros(shared, 64);
        for (auto& x : u.values()) x = dist(rng);
        for (auto& x : v.values()) x = dist(rng);
        double duv = 0.0, dVuv = 0.0, nu_ = 0.0, nVu = 0.0;
        for (std::size_t j = 0; j <= 64; ++j) {
            double d = std::fabs(u.values()[j] - v.values()[j]);
            duv = std::max(duv, d);
            nu_ = std::max(nu_, std::fabs(u.values()[j]));
        }
        for (int j = 0; j <= 128; ++j) {
            double t = a + (T - a) * j / 128.0;
            dVuv = std::max(dVuv, std::fabs(apply(u, t) - apply(v, t)));
            nVu = std::max(nVu, std::fabs(apply(u, t)));
        }
        if (dVuv > duv + 1e-12) throw InvalidProblem("V is not nonexpansive");
        if (nVu > nu_ + 1e-12) throw InvalidProblem("V does not satisfy ||Vu|| <= ||u||");
    }
}

double Kernel::operator()(double t, double s) const {
    double w = (*psi)(t) - (*psi)(s);
    if (w < 0.0) throw OutOfDomain(s);
    if (w == 0.0 && nu < 1.0) throw DomainError("kernel", s);
    return psi->prime(s) * std::pow(w, nu - 1.0) / gamma_fn(nu);
}

void ProblemSpec::validate() const {
    order.validate();
    if (!psi) throw InvalidProblem("missing psi");
    std::size_t m = etas.size();
    if (alphas.size() != m || betas.size() != m)
        throw InvalidProblem("alphas, betas, etas must have equal length");
    double a = psi->a(), T = psi->T();
    double prev = a;
    for (double e : etas) {
        if (!(e > prev)) throw InvalidProblem("etas must be strictly increasing inside (a,T)");
        prev = e;
    }
    if (m > 0 && !(xi > etas.back())) throw InvalidProblem("xi must exceed the largest eta");
    if (!(xi > a && xi < T)) throw InvalidProblem("xi must lie in (a,T)");
    if (!f.valid()) throw InvalidProblem("missing f");
    if (!g.valid()) throw InvalidProblem("missing g");
    if (!relax_g_at_a) {
        double ga = eval(g, {{"u", a}});
        if (std::fabs(ga) > 1e-12) throw InvalidProblem("g(a) must vanish");
    }
    V.validate(*psi);
    compute_delta(*this); // throws DegenerateDelta if the representation degenerates
}

double compute_delta(const ProblemSpec& spec) {
    const PsiFunction& psi = *spec.psi;
    double mu = spec.order.mu();
    double d = psi.power(1.0, psi.T());
    for (std::size_t i = 0; i < spec.etas.size(); ++i) {
        double e = spec.etas[i];
        d -= psi.power(mu - 2.0, e) / gamma_fn(mu - 1.0) *
             (spec.alphas[i] * psi.power(1.0, e) / (mu - 1.0) + spec.betas[i]);
    }
    if (std::fabs(d) <= 1e-12) throw DegenerateDelta(d);
    return d;
}

double eval_Fu(const ProblemSpec& spec, const GridFunction& u, double t) {
    double w = frac_integral_grid(u, 2.0 - spec.order.mu(), t);
    double v = spec.V.apply(u, t);
    return eval(spec.f, {{"t", t}, {"u", u.value_at(t)}, {"v", v}, {"w", w}});
}

} // namespace hilfer
