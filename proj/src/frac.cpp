#include "hilfer/frac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hilfer/errors.hpp"

namespace hilfer {

namespace {

// Finite-difference weights for the m-th derivative at x0 on arbitrary
// nodes x[0..n-1] (Fornberg's recurrence).
std::vector<double> fd_weights(const double* x, int n, double x0, int m) {
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

double safe_eval(const std::function<double(double)>& f, double t) {
    try {
        return f(t);
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

// Contribution of [tau_a, tau_1] when f is singular at the left endpoint:
// fit f ~ c*(tau-tau_a)^p from samples at tau_1 and tau_1/4 and integrate
// against the kernel frozen at its left value. tau_1 - tau_a is O(H/n^2),
// so the frozen-kernel error is negligible.
double left_patch(double f_quarter, double f_one, double tau1_rel,
                  double X_rel, double alpha) {
    if (!std::isfinite(f_quarter) || !std::isfinite(f_one)) return 0.0;
    if (f_quarter * f_one <= 0.0) return 0.0;
    double p = std::log(f_one / f_quarter) / std::log(4.0);
    if (!(p > -0.999) || !(p < 8.0)) return 0.0;
    double c = f_one / std::pow(tau1_rel, p);
    return std::pow(X_rel, alpha - 1.0) * c * std::pow(tau1_rel, p + 1.0) /
           ((p + 1.0) * gamma_fn(alpha));
}

} // namespace

std::vector<double> product_weights(const std::vector<double>& taus, double alpha, double X) {
    if (!(alpha > 0.0)) throw InvalidOrder(alpha);
    std::size_t n = taus.size() - 1;
    std::vector<double> w(n + 1, 0.0);
    if (X <= taus[0]) return w;
    double ga = gamma_fn(alpha);
    for (std::size_t j = 0; j < n; ++j) {
        double t0 = taus[j];
        if (t0 >= X) break;
        double t1 = std::min(taus[j + 1], X);
        double hj = taus[j + 1] - taus[j];
        double w0 = X - t0;
        double w1 = std::max(X - t1, 0.0);
        // exact moments of (X-tau)^{alpha-1} against {1, tau-t0}
        double m0 = (std::pow(w0, alpha) - std::pow(w1, alpha)) / alpha;
        double m1 = w0 * m0 -
                    (std::pow(w0, alpha + 1.0) - std::pow(w1, alpha + 1.0)) / (alpha + 1.0);
        w[j] += (m0 - m1 / hj) / ga;
        w[j + 1] += (m1 / hj) / ga;
    }
    return w;
}

double frac_integral(const PsiFunction& psi, double alpha,
                     const std::function<double(double)>& f, double t,
                     std::size_t n) {
    if (!(alpha > 0.0)) throw InvalidOrder(alpha);
    double X = psi(t);
    double ta = psi.tau_a();
    double H = X - ta;
    if (H <= 0.0) return 0.0;

    std::vector<double> taus(n + 1), vals(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        double s = static_cast<double>(j) / static_cast<double>(n);
        taus[j] = ta + H * s * s;
    }
    taus[n] = X;
    for (std::size_t j = 1; j <= n; ++j) vals[j] = f(psi.inverse(taus[j]));
    vals[0] = safe_eval(f, psi.a());

    if (std::isfinite(vals[0])) {
        auto w = product_weights(taus, alpha, X);
        double acc = 0.0;
        for (std::size_t j = 0; j <= n; ++j) acc += w[j] * vals[j];
        return acc;
    }

    // singular left endpoint: power-fit the first subinterval
    std::vector<double> tail(taus.begin() + 1, taus.end());
    auto w = product_weights(tail, alpha, X);
    double acc = 0.0;
    for (std::size_t j = 0; j < tail.size(); ++j) acc += w[j] * vals[j + 1];
    double tau1_rel = taus[1] - ta;
    double fq = f(psi.inverse(ta + 0.25 * tau1_rel));
    acc += left_patch(fq, vals[1], tau1_rel, H, alpha);
    return acc;
}

double frac_integral_grid(const GridFunction& u, double alpha, double t) {
    double X = u.psi()(t);
    if (X <= u.psi().tau_a()) return 0.0;
    auto w = product_weights(u.taus(), alpha, X);
    double acc = 0.0;
    const auto& v = u.values();
    for (std::size_t j = 0; j < v.size(); ++j) acc += w[j] * v[j];
    return acc;
}

double hilfer_derivative(const PsiFunction& psi, double nu, double beta,
                         const std::function<double(double)>& f, double t,
                         std::size_t n_inner, double delta_frac) {
    if (!(nu > 1.0 && nu <= 2.0)) throw InvalidOrder(nu);
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidOrder(beta);
    double eps_inner = (1.0 - beta) * (2.0 - nu);
    double eps_outer = beta * (2.0 - nu);
    double ta = psi.tau_a(), tT = psi.tau_T();
    double X = psi(t);
    double delta = delta_frac * (tT - ta);
    if (X - ta < 4.0 * delta) throw StencilOutOfDomain(t);

    auto g = [&](double sigma) {
        // inner integral as a function of its upper limit (tau-coordinate)
        if (eps_inner == 0.0) return f(psi.inverse(sigma));
        return frac_integral(psi, eps_inner, f, psi.inverse(sigma), n_inner);
    };
    auto g2 = [&](double sigma) {
        // keep every stencil point strictly above ta: the inner integral
        // may jump there (f ~ psi_a^{-eps_inner} gives a constant with a
        // removable endpoint value of zero)
        double center = std::clamp(sigma, ta + 2.5 * delta, tT - 2.0 * delta);
        double pts[5], vals[5];
        for (int i = 0; i < 5; ++i) {
            pts[i] = center + (i - 2) * delta;
            vals[i] = g(pts[i]);
        }
        auto w = fd_weights(pts, 5, sigma, 2);
        double acc = 0.0;
        for (int i = 0; i < 5; ++i) acc += w[i] * vals[i];
        return acc;
    };

    if (eps_outer == 0.0) return g2(X);

    // outer integral over [ta + 2*delta, X] with a power-fit patch below
    const std::size_t m = 256;
    double lo = ta + 2.0 * delta;
    std::vector<double> sig(m + 1), vals(m + 1);
    for (std::size_t j = 0; j <= m; ++j)
        sig[j] = lo + (X - lo) * static_cast<double>(j) / static_cast<double>(m);
    for (std::size_t j = 0; j <= m; ++j) vals[j] = g2(sig[j]);
    auto w = product_weights(sig, eps_outer, X);
    double acc = 0.0;
    for (std::size_t j = 0; j <= m; ++j) acc += w[j] * vals[j];

    // patch [ta, ta+2*delta]: fit g'' ~ c*(sigma-ta)^p from 2*delta and 4*delta
    double g2_far = g2(ta + 4.0 * delta);
    if (std::isfinite(vals[0]) && std::isfinite(g2_far) && vals[0] * g2_far > 0.0) {
        double p = std::log(vals[0] / g2_far) / std::log(0.5);
        if (p > -0.999 && p < 8.0) {
            double c = vals[0] / std::pow(2.0 * delta, p);
            acc += std::pow(X - ta, eps_outer - 1.0) * c *
                   std::pow(2.0 * delta, p + 1.0) / ((p + 1.0) * gamma_fn(eps_outer));
        }
    }
    return acc;
}

} // namespace hilfer
