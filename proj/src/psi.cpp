#include "hilfer/psi.hpp"

#include <algorithm>
#include <cmath>

#include "hilfer/errors.hpp"

namespace hilfer {

namespace {

// Lanczos g=7, n=9 coefficients (Godfrey/Pugh).
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr int kValidationSamples = 512;
constexpr double kDomainSlack = 1e-9;

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw NonPositiveArgument(x);
    if (x < 0.5) {
        // reflection keeps the series argument away from 0
        return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
    }
    double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

PsiFunction::PsiFunction(Fn psi, Fn prime, double a, double T, Fn inverse)
    : psi_(std::move(psi)), prime_(std::move(prime)), inverse_(std::move(inverse)),
      a_(a), T_(T) {
    if (!(a < T)) throw InvalidProblem("psi interval requires a < T");
    tau_a_ = psi_(a_);
    tau_T_ = psi_(T_);
    validate();
}

void PsiFunction::validate() const {
    double prev = tau_a_;
    for (int j = 1; j <= kValidationSamples; ++j) {
        double t = a_ + (T_ - a_) * j / kValidationSamples;
        double v = psi_(t);
        if (!(v > prev))
            throw InvalidProblem("psi is not strictly increasing on [a,T]");
        if (!(prime_(t) > 0.0))
            throw InvalidProblem("psi' must be positive on [a,T]");
        prev = v;
    }
    if (inverse_) {
        for (int j = 0; j <= 32; ++j) {
            double tau = tau_a_ + (tau_T_ - tau_a_) * j / 32;
            if (std::fabs(psi_(inverse_(tau)) - tau) > 1e-10 * std::max(1.0, std::fabs(tau_T_)))
                throw InvalidProblem("inverse_hint is not an inverse of psi");
        }
    }
}

double PsiFunction::operator()(double t) const {
    if (t < a_ - kDomainSlack * (T_ - a_) || t > T_ + kDomainSlack * (T_ - a_))
        throw OutOfDomain(t);
    return psi_(t);
}

double PsiFunction::prime(double t) const {
    if (t < a_ - kDomainSlack * (T_ - a_) || t > T_ + kDomainSlack * (T_ - a_))
        throw OutOfDomain(t);
    return prime_(t);
}

double PsiFunction::inverse(double tau) const {
    double slack = 1e-9 * std::max(1.0, tau_T_ - tau_a_);
    if (tau < tau_a_ - slack || tau > tau_T_ + slack) throw OutOfRange(tau);
    tau = std::clamp(tau, tau_a_, tau_T_);
    if (inverse_) return std::clamp(inverse_(tau), a_, T_);
    // monotone bisection
    double lo = a_, hi = T_;
    double tol = 1e-12 * std::max(1.0, std::fabs(tau_T_));
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = psi_(mid);
        if (std::fabs(v - tau) <= tol) return mid;
        (v < tau ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double PsiFunction::power(double sigma, double t) const {
    double w = (*this)(t) - tau_a_;
    if (w <= 0.0) {
        if (sigma < 0.0) throw SingularAtLeftEndpoint();
        return sigma == 0.0 ? 1.0 : 0.0;
    }
    return std::pow(w, sigma);
}

PsiFunction PsiFunction::from_exprs(const Expr& psi, std::optional<Expr> psi_prime,
                                    double a, double T,
                                    std::optional<Expr> inverse_hint) {
    Fn p = [psi](double t) { return eval(psi, {{"t", t}}); };
    Fn pr;
    if (psi_prime) {
        Expr d = *psi_prime;
        pr = [d](double t) { return eval(d, {{"t", t}}); };
    } else {
        double h = 1e-6 * (T - a);
        pr = [p, h](double t) { return (p(t + h) - p(t - h)) / (2 * h); };
    }
    Fn inv;
    if (inverse_hint) {
        Expr iv = *inverse_hint;
        inv = [iv](double tau) { return eval(iv, {{"tau", tau}}); };
    }
    return PsiFunction(std::move(p), std::move(pr), a, T, std::move(inv));
}

PsiFunction PsiFunction::linear(double a, double T) {
    return PsiFunction([](double t) { return t; },
                       [](double) { return 1.0; }, a, T,
                       [](double tau) { return tau; });
}

PsiFunction PsiFunction::exp_saturating(double c, double a, double T) {
    return PsiFunction([c](double t) { return 1.0 - std::exp(-c * t); },
                       [c](double t) { return c * std::exp(-c * t); }, a, T,
                       [c](double tau) { return -std::log(1.0 - tau) / c; });
}

PsiFunction PsiFunction::power_exponential(double rho, double a, double T) {
    const double ln3 = std::log(3.0);
    return PsiFunction(
        [rho](double t) { return std::pow(3.0, std::pow(t, rho) + 2.0 * t) - 1.0; },
        [rho, ln3](double t) {
            double dexp = (t > 0.0 ? rho * std::pow(t, rho - 1.0) : (rho > 1.0 ? 0.0 : rho)) + 2.0;
            return ln3 * dexp * std::pow(3.0, std::pow(t, rho) + 2.0 * t);
        },
        a, T, nullptr);
}

PsiFunction PsiFunction::tangent(double rho, double a, double T) {
    const double c = M_PI * std::sqrt(rho) / 4.0;
    return PsiFunction([c](double t) { return std::tan(c * t); },
                       [c](double t) { double s = 1.0 / std::cos(c * t); return c * s * s; },
                       a, T,
                       [c](double tau) { return std::atan(tau) / c; });
}

} // namespace hilfer
