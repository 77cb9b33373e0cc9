#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "genea/distributions.hpp"
#include "genea/parallel.hpp"
#include "genea/stats.hpp"

using namespace genea;

namespace {
constexpr double kPi = 3.14159265358979323846;
const BranchingParams kUnit{1.0, 1.0};
} // namespace

TEST_CASE("psi closed form") {
    CHECK(psi({1.0, 0.0}, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(psi({1.0, 1.0}, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(psi({2.0, 0.5}, 0.0) == 0.0);
    CHECK_THROWS_AS(psi(kUnit, -1.0), std::invalid_argument);
}

TEST_CASE("c_theta values and monotonicity") {
    CHECK(c_theta(kUnit, std::log(3.0) / 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c_theta({2.0, 0.0}, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    double prev = c_theta(kUnit, 1e-4);
    for (double h = 1e-3; h < 20.0; h *= 1.7) {
        const double c = c_theta(kUnit, h);
        CHECK(c < prev);
        prev = c;
    }
    CHECK(c_theta(kUnit, 1e-9) > 1e8);
    CHECK(c_theta(kUnit, 50.0) < 1e-40);
    CHECK_THROWS_AS(c_theta(kUnit, 0.0), std::invalid_argument);
}

TEST_CASE("c_theta_prime_abs value, positivity, finite differences") {
    CHECK(c_theta_prime_abs(kUnit, std::log(3.0) / 2.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(c_theta_prime_abs({1.0, 0.0}, 1.0), std::invalid_argument);
    const double dh = 1e-6;
    for (double h : {0.05, 0.3, 1.0, 3.0}) {
        const double fd = (c_theta(kUnit, h - dh) - c_theta(kUnit, h + dh)) / (2.0 * dh);
        const double an = c_theta_prime_abs(kUnit, h);
        CHECK(an > 0.0);
        CHECK(std::fabs(fd - an) / an < 1e-7);
    }
}

TEST_CASE("c_theta_inv inverts c_theta") {
    CHECK(c_theta_inv(kUnit, 1.0) == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-14));
    for (double h = 1e-3; h <= 10.0; h *= 1.4) {
        const double back = c_theta_inv(kUnit, c_theta(kUnit, h));
        CHECK(std::fabs(back - h) / h < 1e-12);
    }
    // y -> inf gives h -> 0+ monotonically
    double prev = c_theta_inv(kUnit, 1.0);
    for (double y = 10.0; y < 1e8; y *= 10.0) {
        const double h = c_theta_inv(kUnit, y);
        CHECK(h < prev);
        CHECK(h > 0.0);
        prev = h;
    }
    CHECK_THROWS_AS(c_theta_inv(kUnit, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(c_theta_inv({1.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("zeta* quantile hits the worked value") {
    for (double theta : {0.5, 1.0, 2.0}) {
        for (double delta : {0.25, 1.0}) {
            const BranchingParams p{1.0, theta};
            const double u = std::exp(-2.0 * theta * delta);
            CHECK(zeta_star_quantile(p, delta, u) ==
                  doctest::Approx(std::log(2.0) / (2.0 * theta * p.beta)).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(zeta_star_quantile({1.0, 0.0}, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("zeta* draws: positivity and KS against the analytic CDF") {
    const double delta = 0.7;
    RngStream rng(2024, 0);
    std::vector<double> draws(20000);
    for (double& d : draws) d = sample_zeta_star(kUnit, delta, rng);
    for (double d : draws) CHECK(d > 0.0);
    const auto v = ks_one_sample(
        "zeta-star", draws,
        [&](double h) { return h <= 0.0 ? 0.0 : std::exp(-delta * c_theta(kUnit, h)); }, 0.01);
    CHECK(v.pass);
}

TEST_CASE("conditioned zeta*: support, boundary and law") {
    const double delta = 1.0, hmax = 0.5;
    CHECK(zeta_star_conditioned_quantile(kUnit, delta, hmax, 1.0 - 1e-16) ==
          doctest::Approx(hmax).epsilon(1e-12));
    RngStream rng(7, 0);
    std::vector<double> cond(20000);
    for (double& d : cond) d = sample_zeta_star_conditioned(kUnit, delta, hmax, rng);
    for (double d : cond) CHECK(d <= hmax);
    const double c_h = c_theta(kUnit, hmax);
    const auto v = ks_one_sample(
        "zeta-star-cond", cond,
        [&](double u) {
            if (u <= 0.0) return 0.0;
            if (u >= hmax) return 1.0;
            return std::exp(-delta * (c_theta(kUnit, u) - c_h));
        },
        0.01);
    CHECK(v.pass);
    // agreement with rejection sampling
    std::vector<double> rej(20000);
    for (double& d : rej) {
        do {
            d = sample_zeta_star(kUnit, delta, rng);
        } while (d > hmax);
    }
    CHECK(ks_two_sample("cond-vs-rej", cond, rej, 0.01).pass);
}

TEST_CASE("mean_zeta_star: expansion bound, small-delta limit, MC agreement") {
    const double delta = 1e-3;
    const double x = 2.0 * delta;
    const double lead = -(delta)*std::log(x) + delta * (1.0 - kEulerGamma);
    const double mean_q = mean_zeta_star(kUnit, delta);
    CHECK(std::fabs(mean_q - lead) <= delta * x * (std::fabs(std::log(x)) + 2.0));
    CHECK(mean_zeta_star(kUnit, 1e-8) < 2e-7);

    RngStream rng(11, 0);
    std::vector<double> draws(100000);
    for (double& d : draws) d = sample_zeta_star(kUnit, delta, rng);
    CHECK(moment_test("mean-mc", draws, mean_q).pass);
    CHECK_THROWS_AS(mean_zeta_star({1.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("second_moment_zeta_star: bound, MC, dominates mean^2") {
    const double delta = 1e-3;
    const double x = 2.0 * delta;
    const double m2 = second_moment_zeta_star(kUnit, delta);
    const double lead = 2.0 * delta * integral_h_c(kUnit);
    CHECK(std::fabs(m2 - lead) <= delta * x * (std::fabs(std::log(x)) + 2.0));
    CHECK(m2 >= mean_zeta_star(kUnit, delta) * mean_zeta_star(kUnit, delta));

    RngStream rng(12, 0);
    std::vector<double> sq(100000);
    for (double& d : sq) {
        const double z = sample_zeta_star(kUnit, delta, rng);
        d = z * z;
    }
    CHECK(moment_test("m2-mc", sq, m2).pass);
}

TEST_CASE("integral_h_c: dilogarithm value, scaling, Riemann oracle") {
    CHECK(std::fabs(2.0 * integral_h_c(kUnit) - kPi * kPi / 6.0) < 1e-6);
    const BranchingParams q{2.0, 0.5};
    CHECK(integral_h_c(q) ==
          doctest::Approx(integral_h_c(kUnit) / (q.beta * q.beta * q.theta)).epsilon(1e-10));
    // brute-force midpoint sum of h*c(h) on (0, 50]
    double riemann = 0.0;
    const double dx = 1e-4;
    for (double h = 0.5 * dx; h < 50.0; h += dx) riemann += h * c_theta(kUnit, h) * dx;
    CHECK(std::fabs(riemann - integral_h_c(kUnit)) < 1e-5);
    CHECK_THROWS_AS(integral_h_c({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("phi at small integers") {
    CHECK(phi(1.0) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(phi(2.0) == doctest::Approx(3.0).epsilon(1e-11));
    CHECK(phi(3.0) == doctest::Approx(5.5).epsilon(1e-11));
    double hk = 0.0;
    for (int k = 1; k <= 6; ++k) {
        hk += 1.0 / k;
        CHECK(std::fabs(phi(static_cast<double>(k)) - k * hk) < 1e-8);
    }
    CHECK_THROWS_AS(phi(0.0), std::invalid_argument);
}

TEST_CASE("euler-mascheroni constant to 16 digits") {
    CHECK(std::fabs(kEulerGamma - 0.57721566490153286) < 1e-16);
}
