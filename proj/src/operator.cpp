#include "hilfer/operator.hpp"

#include <cmath>

#include "hilfer/errors.hpp"
#include "hilfer/frac.hpp"
#include "hilfer/parallel.hpp"

namespace hilfer {

namespace {

double dot(const std::vector<double>& w, const std::vector<double>& x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * x[j];
    return acc;
}

// trapezoid antiderivative in tau (I^{1,psi} at every node)
std::vector<double> cumtrapz(const std::vector<double>& x, double h) {
    std::vector<double> c(x.size(), 0.0);
    for (std::size_t j = 1; j < x.size(); ++j)
        c[j] = c[j - 1] + 0.5 * (x[j] + x[j - 1]) * h;
    return c;
}

} // namespace

PicardOperator::PicardOperator(ProblemSpec spec, std::size_t n, FidelityMode mode)
    : spec_(std::move(spec)), n_(n), mode_(mode),
      grid_(GridFunction::zeros(spec_.psi, n)) {
    spec_.validate();
    delta_ = compute_delta(spec_);

    const PsiFunction& psi = *spec_.psi;
    double nu = spec_.order.nu;
    double mu = spec_.order.mu();
    const auto& taus = grid_.taus();

    row_off_.resize(n_ + 2);
    for (std::size_t i = 0; i <= n_ + 1; ++i) row_off_[i] = i * (i + 1) / 2;
    M_nu_.assign(row_off_[n_ + 1], 0.0);
    M_2mu_.assign(row_off_[n_ + 1], 0.0);
    parallel_for(n_ + 1, [&](std::size_t i) {
        if (i == 0) return; // I(anything)(a) = 0
        auto wn = product_weights(taus, nu, taus[i]);
        auto w2 = product_weights(taus, 2.0 - mu, taus[i]);
        for (std::size_t j = 0; j <= i; ++j) {
            M_nu_[row_off_[i] + j] = wn[j];
            M_2mu_[row_off_[i] + j] = w2[j];
        }
    });

    for (double e : spec_.etas) {
        double X = psi(e);
        w_eta_nu_.push_back(product_weights(taus, nu, X));
        w_eta_num1_.push_back(product_weights(taus, nu - 1.0, X));
        w_eta_one_.push_back(product_weights(taus, 1.0, X));
    }
    double XT = psi.tau_T();
    w_T_2munu_ = product_weights(taus, 2.0 - mu + nu, XT);
    w_T_3mu_ = product_weights(taus, 3.0 - mu, XT);
    w_T_2mu_ = product_weights(taus, 2.0 - mu, XT);

    pref_.resize(n_ + 1);
    double ta = psi.tau_a();
    double dg = delta_ * gamma_fn(mu);
    for (std::size_t j = 0; j <= n_; ++j)
        pref_[j] = std::pow(taus[j] - ta, mu - 1.0) / dg;
    pref_[0] = 0.0;
}

GridFunction PicardOperator::grid_zeros() const {
    return GridFunction::zeros(spec_.psi, n_);
}

std::vector<double> PicardOperator::matvec(const std::vector<double>& packed,
                                           const std::vector<double>& x) const {
    std::vector<double> out(n_ + 1, 0.0);
    parallel_for(n_ + 1, [&](std::size_t i) {
        const double* row = packed.data() + row_off_[i];
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += row[j] * x[j];
        out[i] = acc;
    });
    return out;
}

std::vector<double> PicardOperator::eval_F(const GridFunction& u) const {
    auto W = matvec(M_2mu_, u.values());
    std::vector<double> F(n_ + 1);
    for (std::size_t j = 0; j <= n_; ++j) {
        double t = grid_.t(j);
        double v = spec_.V.apply(u, t);
        F[j] = eval(spec_.f, {{"t", t}, {"u", u.values()[j]}, {"v", v}, {"w", W[j]}});
    }
    return F;
}

double PicardOperator::beta_coeff(std::size_t i) const {
    double e = spec_.etas[i];
    return mode_ == FidelityMode::PaperFaithful ? (*spec_.psi)(e) : spec_.psi->prime(e);
}

double PicardOperator::int_nu_F_at_eta(std::size_t i, const std::vector<double>& F) const {
    return dot(w_eta_nu_[i], F);
}
double PicardOperator::int_num1_F_at_eta(std::size_t i, const std::vector<double>& F) const {
    return dot(w_eta_num1_[i], F);
}
double PicardOperator::int_2munu_F_at_T(const std::vector<double>& F) const {
    return dot(w_T_2munu_, F);
}
double PicardOperator::int_3mu_u_at_T(const GridFunction& u) const {
    return dot(w_T_3mu_, u.values());
}
double PicardOperator::int_one_u_at_eta(std::size_t i, const GridFunction& u) const {
    return dot(w_eta_one_[i], u.values());
}
double PicardOperator::int_2mu_u_at_T(const GridFunction& u) const {
    return dot(w_T_2mu_, u.values());
}

GridFunction PicardOperator::apply_impl(const GridFunction& u, bool with_a1,
                                        bool with_a2) const {
    GridFunction out = grid_zeros();
    auto& y = out.values();

    if (with_a1) {
        auto F = eval_F(u);
        auto InuF = matvec(M_nu_, F);
        double br = 0.0, lam_br = 0.0;
        for (std::size_t i = 0; i < spec_.etas.size(); ++i) {
            br += spec_.alphas[i] * int_nu_F_at_eta(i, F);
            br += spec_.betas[i] * beta_coeff(i) * int_num1_F_at_eta(i, F);
            lam_br -= spec_.alphas[i] * int_one_u_at_eta(i, u);
            lam_br -= spec_.betas[i] * spec_.psi->prime(spec_.etas[i]) *
                      u.value_at(spec_.etas[i]);
        }
        br -= int_2munu_F_at_T(F);
        lam_br += int_3mu_u_at_T(u);
        auto cum = cumtrapz(u.values(), grid_.h());
        double lam = spec_.lambda;
        for (std::size_t j = 0; j <= n_; ++j)
            y[j] = InuF[j] + pref_[j] * br + lam * (pref_[j] * lam_br - cum[j]);
    }
    if (with_a2) {
        double gval = eval(spec_.g, {{"u", u.value_at(spec_.xi)}});
        for (std::size_t j = 0; j <= n_; ++j) y[j] += pref_[j] * gval;
    }
    out.check_finite();
    return out;
}

GridFunction PicardOperator::apply(const GridFunction& u) const {
    return apply_impl(u, true, true);
}
GridFunction PicardOperator::apply_a1(const GridFunction& u) const {
    return apply_impl(u, true, false);
}
GridFunction PicardOperator::apply_a2(const GridFunction& u) const {
    return apply_impl(u, false, true);
}

double PicardOperator::c1(const GridFunction& u, const std::vector<double>& F) const {
    double lam_br = int_3mu_u_at_T(u);
    double br = -int_2munu_F_at_T(F);
    for (std::size_t i = 0; i < spec_.etas.size(); ++i) {
        lam_br -= spec_.alphas[i] * int_one_u_at_eta(i, u);
        lam_br -= spec_.betas[i] * spec_.psi->prime(spec_.etas[i]) *
                  u.value_at(spec_.etas[i]);
        br += spec_.alphas[i] * int_nu_F_at_eta(i, F);
        br += spec_.betas[i] * beta_coeff(i) * int_num1_F_at_eta(i, F);
    }
    br += eval(spec_.g, {{"u", u.value_at(spec_.xi)}});
    return spec_.lambda / delta_ * lam_br + br / delta_;
}

} // namespace hilfer
