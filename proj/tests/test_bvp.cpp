#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "hilfer/config.hpp"
#include "hilfer/frac.hpp"
#include "hilfer/operator.hpp"
#include "oracle.hpp"

using namespace hilfer;

namespace {

ProblemSpec reference_problem() { return builtin_scenario("example-4.1-i").problem; }

ProblemSpec simple_problem(const std::string& f, const std::string& g,
                           double lambda = 0.0) {
    ProblemSpec s;
    s.order = {1.5, 0.5};
    s.lambda = lambda;
    s.psi = std::make_shared<PsiFunction>(
        PsiFunction::exp_saturating(std::sqrt(2.0), 0.0, 7.0 / 6.0));
    s.alphas = {1.0, 2.0};
    s.betas = {1.0 / 3.0, 2.0 / 5.0};
    s.etas = {1.0 / 6.0, 5.0 / 6.0};
    s.xi = 1.0;
    s.f = parse(f);
    s.g = parse(g);
    s.relax_g_at_a = true;
    return s;
}

GridFunction random_grid(std::shared_ptr<const PsiFunction> psi, std::size_t n,
                         double amp, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-amp, amp);
    GridFunction u = GridFunction::zeros(psi, n);
    for (auto& v : u.values()) v = d(rng);
    return u;
}

} // namespace

TEST_CASE("order validation") {
    FracOrder ok{1.5, 0.5};
    CHECK(ok.mu() == doctest::Approx(1.75).epsilon(1e-15));
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_AS((FracOrder{1.0, 0.5}.validate()), InvalidProblem);
    CHECK_THROWS_AS((FracOrder{2.1, 0.5}.validate()), InvalidProblem);
    CHECK_THROWS_AS((FracOrder{1.5, 1.0}.validate()), InvalidProblem);
    CHECK_THROWS_AS((FracOrder{1.5, -0.1}.validate()), InvalidProblem);
}

TEST_CASE("delta matches the extended-precision oracle") {
    auto spec = reference_problem();
    auto rc = oracle::reference_constants();
    CHECK(compute_delta(spec) == doctest::Approx((double)rc.delta).epsilon(1e-13));
    CHECK(compute_delta(spec) == doctest::Approx(-1.94081).epsilon(1e-3));
}

TEST_CASE("delta without nonlocal terms reduces to psi_a(T)") {
    auto spec = simple_problem("0", "0");
    spec.alphas = {0.0, 0.0};
    spec.betas = {0.0, 0.0};
    CHECK(compute_delta(spec) ==
          doctest::Approx(spec.psi->power(1.0, spec.psi->T())).epsilon(1e-14));
}

TEST_CASE("degenerate delta is rejected") {
    auto spec = simple_problem("0", "0");
    double mu = spec.order.mu();
    double eta = 0.5;
    spec.etas = {eta};
    spec.betas = {0.0};
    // alpha chosen so the nonlocal term cancels psi_a(T) exactly
    double alpha = spec.psi->power(1.0, spec.psi->T()) * (mu - 1.0) *
                   gamma_fn(mu - 1.0) / spec.psi->power(mu - 1.0, eta);
    spec.alphas = {alpha};
    CHECK_THROWS_AS(compute_delta(spec), DegenerateDelta);
}

TEST_CASE("problem validation") {
    auto spec = reference_problem();
    CHECK_NOTHROW(spec.validate());

    auto bad = spec;
    bad.etas = {5.0 / 6.0, 1.0 / 6.0}; // not increasing
    CHECK_THROWS_AS(bad.validate(), InvalidProblem);

    bad = spec;
    bad.xi = 0.5; // inside the eta range
    CHECK_THROWS_AS(bad.validate(), InvalidProblem);

    bad = spec;
    bad.alphas = {1.0}; // length mismatch
    CHECK_THROWS_AS(bad.validate(), InvalidProblem);

    bad = spec;
    bad.g = parse("1 + u"); // g(0) != 0 without the relaxation
    bad.relax_g_at_a = false;
    CHECK_THROWS_AS(bad.validate(), InvalidProblem);
    bad.relax_g_at_a = true;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("V operator") {
    auto psi = std::make_shared<PsiFunction>(
        PsiFunction::exp_saturating(std::sqrt(2.0), 0.0, 7.0 / 6.0));
    GridFunction u = GridFunction::sample(psi, 128, [](double t) { return t * t; });

    auto id = VOperator::identity();
    CHECK(id.apply(u, 0.5) == doctest::Approx(0.25).epsilon(1e-3));
    CHECK_NOTHROW(id.validate(*psi));

    auto warp = VOperator::time_warp(parse("t/2"));
    CHECK(warp.apply(u, 0.8) == doctest::Approx(0.16).epsilon(1e-3));
    CHECK_NOTHROW(warp.validate(*psi));

    auto out = VOperator::time_warp(parse("t + 1"));
    CHECK_THROWS_AS(out.validate(*psi), InvalidProblem);

    auto expanding = VOperator::custom(
        [](const GridFunction& g, double t) { return 3.0 * g.value_at(t); });
    CHECK_THROWS_AS(expanding.validate(*psi), InvalidProblem);
}

TEST_CASE("kernel value") {
    auto psi = std::make_shared<PsiFunction>(PsiFunction::linear(0.0, 1.0));
    Kernel K{psi, 1.5};
    // psi'=1: K = (t-s)^{0.5} / Gamma(1.5)
    CHECK(K(0.9, 0.4) == doctest::Approx(std::sqrt(0.5) / gamma_fn(1.5)).epsilon(1e-13));
}

TEST_CASE("eval_Fu plumbs u, Vu and the fractional integral") {
    auto spec = simple_problem("u + 2*v - w + t", "0");
    auto u = GridFunction::sample(spec.psi, 512, [](double) { return 3.0; });
    double t = 0.9;
    double w = 3.0 * spec.psi->power(0.25, t) / gamma_fn(1.25);
    CHECK(eval_Fu(spec, u, t) == doctest::Approx(3.0 + 6.0 - w + t).epsilon(1e-9));

    auto zero = GridFunction::zeros(spec.psi, 512);
    CHECK(eval_Fu(spec, zero, 0.7) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("operator fixes zero for the homogeneous problem") {
    auto spec = simple_problem("0", "0", 0.01);
    PicardOperator op(spec, 256);
    auto out = op.apply(op.grid_zeros());
    CHECK(out.sup_norm() == 0.0);
}

TEST_CASE("operator output vanishes at the left endpoint") {
    auto spec = reference_problem();
    PicardOperator op(spec, 256);
    auto u = random_grid(spec.psi, 256, 0.5, 7);
    CHECK(op.apply(u).values().front() == 0.0);
}

TEST_CASE("operator splits into A1 + A2") {
    auto spec = reference_problem();
    PicardOperator op(spec, 256);
    auto u = random_grid(spec.psi, 256, 0.5, 11);
    auto a = op.apply(u);
    auto a1 = op.apply_a1(u);
    auto a2 = op.apply_a2(u);
    for (std::size_t j = 0; j <= 256; ++j)
        CHECK(a.values()[j] ==
              doctest::Approx(a1.values()[j] + a2.values()[j]).epsilon(1e-13));
}

TEST_CASE("A2 is k*N Lipschitz") {
    auto spec = reference_problem();
    PicardOperator op(spec, 256);
    double kN = (double)(oracle::reference_constants().k) *
                (double)(std::pow(3.0, 0.25) / 10.0);
    for (unsigned seed : {1u, 2u, 3u}) {
        auto u = random_grid(spec.psi, 256, 0.5, seed);
        auto v = random_grid(spec.psi, 256, 0.5, seed + 100);
        double du = 0.0, dA = 0.0;
        auto a2u = op.apply_a2(u), a2v = op.apply_a2(v);
        for (std::size_t j = 0; j <= 256; ++j) {
            du = std::max(du, std::fabs(u.values()[j] - v.values()[j]));
            dA = std::max(dA, std::fabs(a2u.values()[j] - a2v.values()[j]));
        }
        CHECK(dA <= kN * du * (1.0 + 1e-10));
    }
}

TEST_CASE("empirical contraction factor stays under the criterion value") {
    auto spec = reference_problem();
    PicardOperator op(spec, 512);
    double bound = (double)oracle::reference_constants().banach + 0.01;
    for (unsigned seed : {21u, 22u, 23u}) {
        auto u = random_grid(spec.psi, 512, 0.4, seed);
        auto v = random_grid(spec.psi, 512, 0.4, seed + 50);
        auto au = op.apply(u), av = op.apply(v);
        double du = 0.0, dA = 0.0;
        for (std::size_t j = 0; j <= 512; ++j) {
            du = std::max(du, std::fabs(u.values()[j] - v.values()[j]));
            dA = std::max(dA, std::fabs(au.values()[j] - av.values()[j]));
        }
        CHECK(dA <= bound * du);
    }
}

TEST_CASE("fidelity modes differ only in the beta coefficient") {
    auto spec = reference_problem();
    PicardOperator pf(spec, 128, FidelityMode::PaperFaithful);
    PicardOperator co(spec, 128, FidelityMode::Corrected);
    for (std::size_t i = 0; i < spec.etas.size(); ++i) {
        CHECK(pf.beta_coeff(i) ==
              doctest::Approx((*spec.psi)(spec.etas[i])).epsilon(1e-14));
        CHECK(co.beta_coeff(i) ==
              doctest::Approx(spec.psi->prime(spec.etas[i])).epsilon(1e-14));
    }
    auto u = random_grid(spec.psi, 128, 0.3, 5);
    auto d1 = pf.apply(u), d2 = co.apply(u);
    double diff = 0.0;
    for (std::size_t j = 0; j <= 128; ++j)
        diff = std::max(diff, std::fabs(d1.values()[j] - d2.values()[j]));
    CHECK(diff > 0.0); // the modes are genuinely different operators
}
