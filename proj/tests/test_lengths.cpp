#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>

#include "genea/distributions.hpp"
#include "genea/lengths.hpp"
#include "genea/parallel.hpp"
#include "genea/stats.hpp"

using namespace genea;

namespace {
const BranchingParams kUnit{1.0, 1.0};
}

TEST_CASE("truncated-length compensator: quadrature oracle and leading order") {
    const double eps = 1e-4;
    boost::math::quadrature::exp_sinh<double> integrator;
    const double quad =
        integrator.integrate([&](double h) { return c_theta(kUnit, h + eps); }, 1e-12);
    CHECK(compensator_L_eps(kUnit, 1.0, eps) == doctest::Approx(quad).epsilon(1e-8));
    // agrees with -(z0/beta) log(2 beta theta eps) up to O(eps)
    CHECK(std::fabs(compensator_L_eps(kUnit, 1.0, eps) + std::log(2.0 * eps)) < 1e-3);
    // linear in z0
    CHECK(compensator_L_eps(kUnit, 3.0, eps) ==
          doctest::Approx(3.0 * compensator_L_eps(kUnit, 1.0, eps)).epsilon(1e-14));
    CHECK_THROWS_AS(compensator_L_eps(kUnit, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("exact tree-length compensator: single atom and unbiasedness") {
    SampleFrame f;
    f.e_g = f.e_d = 0.5;
    f.xs = {0.3};
    CHECK(compensator_lambda_exact(kUnit, f) ==
          doctest::Approx(mean_zeta_star(kUnit, 0.3)).epsilon(1e-14));

    auto centered = run_replicates(401, 0, 20000, 4, [&](std::size_t, RngStream& rng) {
        const auto s = sample_static_conditional_z0(kUnit, 5, 1.0, rng);
        return total_length(s.process) - compensator_lambda_exact(kUnit, s.frame);
    });
    CHECK(moment_test("compensated-mean", centered, 0.0).pass);
}

TEST_CASE("leading-order tree-length compensator") {
    CHECK(compensator_lambda_asymptotic(kUnit, 1.0, 1000) ==
          doctest::Approx(std::log(500.0)).epsilon(1e-14));
    CHECK(compensator_lambda_asymptotic(kUnit, 1.0, 2) == 0.0);
}

TEST_CASE("limit Laplace transform targets") {
    CHECK(laplace_limit_target(kUnit, 1.0, 2.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    CHECK(laplace_limit_target(kUnit, 1.0, 4.0) == doctest::Approx(std::exp(3.0)).epsilon(1e-9));
    CHECK(laplace_limit_target(kUnit, 2.0, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
    CHECK(laplace_limit_target(kUnit, 1e-12, 3.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Laplace MC estimator: limits and error scaling") {
    const auto tiny = estimate_laplace_mc(kUnit, 1.0, 1e-9, 1e-3, 2000, 402, 0, 2);
    CHECK(std::fabs(tiny.estimate - 1.0) < 1e-4);

    const auto small = estimate_laplace_mc(kUnit, 1.0, 1.0, 1e-3, 1000, 403, 0, 2);
    const auto big = estimate_laplace_mc(kUnit, 1.0, 1.0, 1e-3, 10000, 403, 1u << 20, 2);
    const double ratio = big.se / small.se;
    CHECK(ratio > 0.15);
    CHECK(ratio < 0.65);

    // against the exact finite-eps transform: the compensated sum over the
    // truncated point process has Laplace exponent
    // lambda * z0 * int_eps^inf (1 - exp(-lambda(h-eps))) c(h) dh
    const double lam = 2.0, eps = 1e-4;
    boost::math::quadrature::exp_sinh<double> integrator;
    const double exponent = lam * integrator.integrate(
        [&](double t) { return (1.0 - std::exp(-lam * t)) * c_theta(kUnit, t + eps); }, 1e-12);
    const auto est = estimate_laplace_mc(kUnit, 1.0, lam, eps, 20000, 404, 0, 4);
    CHECK(std::fabs(est.estimate - std::exp(exponent)) < 4.0 * est.se);
}

TEST_CASE("coupled lengths: truncation depth, bounds, decay") {
    RngStream rng(405, 0);
    for (std::size_t n : {std::size_t{1}, std::size_t{7}}) {
        for (int i = 0; i < 200; ++i) {
            const CoupledLengths c = coupled_lengths(kUnit, 1.0, n, rng);
            CHECK(c.eps == 1.0 / static_cast<double>(n));
            CHECK(c.lambda_n >= 0.0);
            CHECK(c.l_eps >= 0.0);
            // each gap maximum exceeds the gap's truncated-length share by at most eps
            CHECK(c.lambda_n <= c.l_eps + static_cast<double>(n) * c.eps + 1e-12);
        }
    }
    auto j30 = run_replicates(406, 0, 3000, 4, [&](std::size_t, RngStream& r) {
        const double d = coupled_difference(kUnit, 1.0, 30, r);
        return d * d;
    });
    auto j300 = run_replicates(406, 1u << 20, 3000, 4, [&](std::size_t, RngStream& r) {
        const double d = coupled_difference(kUnit, 1.0, 300, r);
        return d * d;
    });
    CHECK(moments_of(j30).mean > moments_of(j300).mean);
}

TEST_CASE("length summary csv") {
    CHECK(length_summary_csv_header() == "replicate,z0,n_or_eps,raw,compensator,compensated\n");
    LengthSummary s;
    s.raw = 2.5;
    s.compensator = 2.0;
    s.compensated = 0.5;
    s.z0 = 1.0;
    s.n_or_eps = 1000.0;
    CHECK(length_summary_csv_row(7, s) == "7,1,1000,2.5,2,0.5\n");
}
