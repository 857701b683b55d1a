#include "hilfer/grid.hpp"

#include <algorithm>
#include <cmath>

#include "hilfer/errors.hpp"

namespace hilfer {

GridFunction::GridFunction(std::shared_ptr<const PsiFunction> psi, std::size_t n)
    : psi_(std::move(psi)), n_(n) {
    if (!psi_) throw InvalidProblem("grid needs a psi function");
    if (n_ < 2) throw InvalidProblem("grid needs at least 2 subintervals");
    double ta = psi_->tau_a(), tT = psi_->tau_T();
    h_ = (tT - ta) / static_cast<double>(n_);
    taus_.resize(n_ + 1);
    ts_.resize(n_ + 1);
    for (std::size_t j = 0; j <= n_; ++j) {
        taus_[j] = ta + h_ * static_cast<double>(j);
        ts_[j] = psi_->inverse(taus_[j]);
    }
    taus_[n_] = tT; // exact endpoints regardless of rounding
    ts_[0] = psi_->a();
    ts_[n_] = psi_->T();
    values_.assign(n_ + 1, 0.0);
}

GridFunction GridFunction::zeros(std::shared_ptr<const PsiFunction> psi, std::size_t n) {
    return GridFunction(std::move(psi), n);
}

GridFunction GridFunction::sample(std::shared_ptr<const PsiFunction> psi, std::size_t n,
                                  const std::function<double(double)>& fn) {
    GridFunction g(std::move(psi), n);
    for (std::size_t j = 0; j <= n; ++j) g.values_[j] = fn(g.ts_[j]);
    g.check_finite();
    return g;
}

double GridFunction::value_at_tau(double tau) const {
    double ta = taus_.front(), tT = taus_.back();
    double slack = 1e-9 * std::max(1.0, tT - ta);
    if (tau < ta - slack || tau > tT + slack) throw OutOfRange(tau);
    tau = std::clamp(tau, ta, tT);
    auto j = static_cast<std::size_t>((tau - ta) / h_);
    if (j >= n_) j = n_ - 1;
    double w = (tau - taus_[j]) / h_;
    return values_[j] * (1.0 - w) + values_[j + 1] * w;
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
}

void GridFunction::check_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidProblem("grid function has non-finite values");
}

} // namespace hilfer
