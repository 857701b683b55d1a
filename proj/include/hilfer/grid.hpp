#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "hilfer/psi.hpp"

namespace hilfer {

// A real-valued function on [a,T], sampled on a uniform grid in the
// transformed coordinate tau = psi(t). All quadrature below works in tau,
// so uniform-in-tau sampling keeps interpolation and quadrature aligned.
class GridFunction {
public:
    // Zero function on n subintervals (n+1 nodes).
    static GridFunction zeros(std::shared_ptr<const PsiFunction> psi, std::size_t n);
    // Samples fn(t) at the grid's t-nodes.
    static GridFunction sample(std::shared_ptr<const PsiFunction> psi, std::size_t n,
                               const std::function<double(double)>& fn);

    std::size_t n() const { return n_; }
    double h() const { return h_; }
    double tau(std::size_t j) const { return taus_[j]; }
    double t(std::size_t j) const { return ts_[j]; }
    const std::vector<double>& taus() const { return taus_; }
    const std::vector<double>& ts() const { return ts_; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    const PsiFunction& psi() const { return *psi_; }
    std::shared_ptr<const PsiFunction> psi_ptr() const { return psi_; }

    // Linear interpolation in tau; tau clamped to [psi(a), psi(T)] within
    // a relative slack of 1e-9, out-of-range otherwise.
    double value_at_tau(double tau) const;
    double value_at(double t) const { return value_at_tau((*psi_)(t)); }

    double sup_norm() const;

    // Throws InvalidProblem if any value is NaN or infinite.
    void check_finite() const;

private:
    GridFunction(std::shared_ptr<const PsiFunction> psi, std::size_t n);

    std::shared_ptr<const PsiFunction> psi_;
    std::size_t n_;
    double h_;
    std::vector<double> taus_, ts_, values_;
};

} // namespace hilfer
