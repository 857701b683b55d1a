#pragma once

#include <cstddef>
#include <vector>

#include "hilfer/grid.hpp"
#include "hilfer/problem.hpp"

namespace hilfer {

// Coefficient convention for the beta_i I^{nu-1,psi} boundary terms.
// PaperFaithful multiplies by psi(eta_i); Corrected uses psi'(eta_i),
// which is what differentiating I^{nu,psi} actually produces. Both are
// exposed; PaperFaithful is the default and reproduces the reference
// constants.
enum class FidelityMode { PaperFaithful, Corrected };

// The fixed-point operator A = A1 + A2 of the integral representation,
// discretized on a uniform tau grid with n subintervals. Quadrature
// weights for every needed fractional order and abscissa are precomputed
// at construction, so one application is a pair of triangular mat-vecs.
class PicardOperator {
public:
    PicardOperator(ProblemSpec spec, std::size_t n,
                   FidelityMode mode = FidelityMode::PaperFaithful);

    const ProblemSpec& spec() const { return spec_; }
    std::size_t n() const { return n_; }
    FidelityMode mode() const { return mode_; }
    double delta() const { return delta_; }

    GridFunction grid_zeros() const;

    GridFunction apply(const GridFunction& u) const;    // A u
    GridFunction apply_a1(const GridFunction& u) const; // A1 u (no g term)
    GridFunction apply_a2(const GridFunction& u) const; // A2 u (only g term)

    // F_u at every grid node.
    std::vector<double> eval_F(const GridFunction& u) const;

    // The constant c1 of the representation (used by the boundary-residual
    // diagnostics): c1 = lambda/Delta * [I^{3-mu}u(T) - sum alpha_i I^1 u(eta_i)
    // - sum beta_i psi'(eta_i) u(eta_i)] + (1/Delta) * [sum alpha_i I^nu F(eta_i)
    // + sum beta_i c_i I^{nu-1} F(eta_i) - I^{2-mu+nu} F(T) + g(u(xi))].
    double c1(const GridFunction& u, const std::vector<double>& F) const;

    // Row-vector dot products against precomputed boundary weights.
    double int_nu_F_at_eta(std::size_t i, const std::vector<double>& F) const;
    double int_num1_F_at_eta(std::size_t i, const std::vector<double>& F) const;
    double int_2munu_F_at_T(const std::vector<double>& F) const;
    double int_3mu_u_at_T(const GridFunction& u) const;
    double int_one_u_at_eta(std::size_t i, const GridFunction& u) const;
    double int_2mu_u_at_T(const GridFunction& u) const;

    double beta_coeff(std::size_t i) const; // psi(eta_i) or psi'(eta_i)

private:
    GridFunction apply_impl(const GridFunction& u, bool with_a1, bool with_a2) const;
    std::vector<double> matvec(const std::vector<double>& packed,
                               const std::vector<double>& x) const;

    ProblemSpec spec_;
    std::size_t n_;
    FidelityMode mode_;
    double delta_;
    GridFunction grid_; // node layout; values unused

    // lower-triangular weight matrices, packed row-major (row i has i+1 entries)
    std::vector<double> M_nu_, M_2mu_;
    std::vector<std::size_t> row_off_;

    std::vector<std::vector<double>> w_eta_nu_, w_eta_num1_, w_eta_one_;
    std::vector<double> w_T_2munu_, w_T_3mu_, w_T_2mu_;
    std::vector<double> pref_; // psi_a^{mu-1}(t_j) / (Delta * Gamma(mu))
};

} // namespace hilfer
