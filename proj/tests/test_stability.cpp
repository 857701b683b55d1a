#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "hilfer/config.hpp"
#include "hilfer/frac.hpp"
#include "hilfer/stability.hpp"

using namespace hilfer;

TEST_CASE("perturbation validation") {
    auto psi = PsiFunction::exp_saturating(std::sqrt(2.0), 0.0, 7.0 / 6.0);
    Perturbation ok{Expr::number(5e-3), 1e-2};
    CHECK_NOTHROW(ok.validate(psi));

    Perturbation tight{parse("sin(t)/100"), 1e-2};
    CHECK_NOTHROW(tight.validate(psi));

    Perturbation bad{parse("t"), 1e-2}; // |t| exceeds eps over [0, 7/6]
    CHECK_THROWS_AS(bad.validate(psi), InvalidProblem);
}

TEST_CASE("zero perturbation reproduces the base solution") {
    auto cfg = builtin_scenario("example-4.1-i");
    auto base = picard_solve(cfg.problem, 512, cfg.mode, 1e-12, 500);
    REQUIRE(base.converged);
    Perturbation none{Expr::number(0.0), 0.0};
    auto pert = perturbed_solve(cfg.problem, none, 512, 1e-12, 500, cfg.mode);
    REQUIRE(pert.converged);
    double d = 0.0;
    for (std::size_t j = 0; j <= 512; ++j)
        d = std::max(d, std::fabs(base.u.values()[j] - pert.u.values()[j]));
    CHECK(d <= 1e-11);
}

TEST_CASE("linear problem shifts by the closed-form response") {
    // f=1, g=0, lambda=0: the solution is affine in the forcing, so a
    // constant perturbation eps scales the solution by (1+eps).
    ProblemSpec s;
    s.order = {1.5, 0.5};
    s.lambda = 0.0;
    s.psi = std::make_shared<PsiFunction>(
        PsiFunction::exp_saturating(std::sqrt(2.0), 0.0, 7.0 / 6.0));
    s.alphas = {1.0, 2.0};
    s.betas = {1.0 / 3.0, 2.0 / 5.0};
    s.etas = {1.0 / 6.0, 5.0 / 6.0};
    s.xi = 1.0;
    s.f = parse("1");
    s.g = parse("0");

    double eps = 1e-2;
    auto base = picard_solve(s, 512, FidelityMode::PaperFaithful, 1e-12, 50);
    Perturbation p{Expr::number(eps), eps};
    auto pert = perturbed_solve(s, p, 512, 1e-12, 50);
    REQUIRE(base.converged);
    REQUIRE(pert.converged);
    for (std::size_t j = 0; j <= 512; j += 64)
        CHECK(pert.u.values()[j] ==
              doctest::Approx((1.0 + eps) * base.u.values()[j]).epsilon(1e-10));
}

TEST_CASE("empirical stability check passes for the reference problem") {
    auto cfg = builtin_scenario("example-4.1-i");
    Perturbation p{Expr::number(1e-2), 1e-2};
    auto res = uh_check(cfg.problem, p, 512, 1e-12, 500, cfg.mode);
    CHECK(res.pass);
    CHECK(res.sup_diff > 0.0);
    CHECK(res.sup_diff <= res.bound + 2e-12);

    Perturbation p2{Expr::number(1e-3), 1e-3};
    auto res2 = uh_check(cfg.problem, p2, 512, 1e-12, 500, cfg.mode);
    CHECK(res2.pass);
    // response is linear in eps to within a factor of 2
    double ratio = res.sup_diff / res2.sup_diff;
    CHECK(ratio >= 5.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("stability check needs a contractive problem") {
    auto cfg = builtin_scenario("example-4.1-ii"); // no l_i metadata
    Perturbation p{Expr::number(1e-3), 1e-3};
    CHECK_THROWS_AS(uh_check(cfg.problem, p, 256, 1e-10, 200, cfg.mode),
                    NotContractive);
}

TEST_CASE("oversized perturbation is rejected") {
    auto cfg = builtin_scenario("example-4.1-i");
    Perturbation p{parse("cos(t)"), 1e-3};
    CHECK_THROWS_AS(perturbed_solve(cfg.problem, p, 256, 1e-10, 200, cfg.mode),
                    InvalidProblem);
}
