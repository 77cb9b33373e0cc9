#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "genea/distributions.hpp"
#include "genea/rng.hpp"
#include "genea/samplers.hpp"
#include "genea/stats.hpp"

using namespace genea;

namespace {
auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
}

TEST_CASE("ks critical constants") {
    CHECK(std::fabs(ks_critical(0.01) - 1.628) < 5e-4);
    CHECK(std::fabs(ks_critical(0.001) - 1.9495) < 5e-4);
}

TEST_CASE("one-sample KS: calibration at alpha=0.01") {
    RngStream rng(201, 0);
    int passes = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> xs(500);
        for (double& x : xs) x = rng.uniform01();
        passes += ks_one_sample("calib", std::move(xs), uniform_cdf, 0.01).pass ? 1 : 0;
    }
    CHECK(passes >= 98);
}

TEST_CASE("one-sample KS: power against a 3/sqrt(n) shift") {
    RngStream rng(202, 0);
    const std::size_t n = 10000;
    const double shift = 3.0 / std::sqrt(static_cast<double>(n));
    int fails = 0;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> xs(n);
        for (double& x : xs) x = rng.uniform01() * (1.0 - shift) + shift;
        fails += ks_one_sample("power", std::move(xs), uniform_cdf, 0.01).pass ? 0 : 1;
    }
    CHECK(fails > 10);
}

TEST_CASE("one-sample KS: typical statistic at n=100") {
    RngStream rng(203, 0);
    int small = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> xs(100);
        for (double& x : xs) x = rng.uniform01();
        small += ks_one_sample("typ", std::move(xs), uniform_cdf, 0.01).statistic <= 0.163 ? 1 : 0;
    }
    CHECK(small >= 90);
    CHECK_THROWS_AS(ks_one_sample("few", std::vector<double>(10, 0.5), uniform_cdf),
                    std::invalid_argument);
}

TEST_CASE("two-sample KS: calibration, disjoint support, shift power") {
    RngStream rng(204, 0);
    int passes = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> a(400), b(400);
        for (double& x : a) x = rng.uniform01();
        for (double& x : b) x = rng.uniform01();
        passes += ks_two_sample("calib", std::move(a), std::move(b), 0.01).pass ? 1 : 0;
    }
    CHECK(passes >= 98);

    std::vector<double> lo(200), hi(200);
    for (std::size_t i = 0; i < 200; ++i) {
        lo[i] = static_cast<double>(i);
        hi[i] = 1000.0 + static_cast<double>(i);
    }
    const auto v = ks_two_sample("disjoint", lo, hi, 0.01);
    CHECK(v.statistic == 1.0);
    CHECK(!v.pass);

    int fails = 0;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> a(5000), b(5000);
        for (double& x : a) x = rng.uniform01();
        for (double& x : b) x = rng.uniform01() + 0.06;
        fails += ks_two_sample("shift", std::move(a), std::move(b), 0.01).pass ? 0 : 1;
    }
    CHECK(fails > 10);
}

TEST_CASE("moment test behavior") {
    RngStream rng(205, 0);
    std::vector<double> xs(100000);
    for (double& x : xs) x = rng.exponential(1.0);
    CHECK(moment_test("exp-vs-1", xs, 1.0).pass);
    CHECK(!moment_test("exp-vs-1.5", xs, 1.5).pass);
    CHECK_THROWS_AS(moment_test("empty", {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(moment_test("one", {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("variance and correlation tests") {
    RngStream rng(206, 0);
    std::vector<double> xs(100000), ys(100000);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = rng.exponential(1.0);
        ys[i] = rng.exponential(1.0);
    }
    CHECK(variance_test("exp-var", xs, 1.0).pass);
    CHECK(!variance_test("exp-var-wrong", xs, 2.0).pass);
    CHECK(correlation_test("indep", xs, ys).pass);
    CHECK(!correlation_test("self", xs, xs).pass);
}

TEST_CASE("pit test on the deepest-lineage triple") {
    const BranchingParams p{1.0, 1.0};
    const auto verdicts = eex_pit_test(p, 20000, 1e-3, 207, 0, 2);
    REQUIRE(verdicts.size() == 7);
    for (const auto& v : verdicts) {
        INFO(v.name);
        CHECK(v.pass);
    }
}

TEST_CASE("pit test power: dropping the depth-dependent rate breaks uniformity") {
    const BranchingParams p{1.0, 1.0};
    RngStream rng(208, 0);
    std::vector<double> t2;
    AncestralProcess scratch;
    while (t2.size() < 20000) {
        const auto [eg, ed] = sample_boundaries(p, rng);
        sample_full_ancestral_given(p, 1e-3, eg, ed, rng, scratch);
        if (scratch.atoms.empty()) continue;
        double zmax = 0.0, x = 0.0;
        for (const Atom& a : scratch.atoms)
            if (a.zeta > zmax) {
                zmax = a.zeta;
                x = a.u;
            }
        // wrong rate: 2*theta alone instead of 2*theta + c(zmax)
        t2.push_back(-std::expm1(-2.0 * p.theta * std::fabs(x)));
    }
    CHECK(!ks_one_sample("pit-wrong-rate", std::move(t2), uniform_cdf, 0.01).pass);
}
