#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "genea/parallel.hpp"
#include "genea/rng.hpp"
#include "genea/stats.hpp"

using namespace genea;

TEST_CASE("identical (seed, stream) gives identical output") {
    RngStream a(123, 7), b(123, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform01() == b.uniform01());
    RngStream c(123, 8);
    bool differs = false;
    RngStream a2(123, 7);
    for (int i = 0; i < 64; ++i) differs = differs || (a2.next_u64() != c.next_u64());
    CHECK(differs);
}

TEST_CASE("uniform01 stays inside the open interval") {
    RngStream rng(1, 0);
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("exponential moments") {
    RngStream rng(2, 0);
    std::vector<double> xs(100000);
    for (double& x : xs) x = rng.exponential(2.0);
    CHECK(moment_test("exp-mean", xs, 0.5).pass);
    for (double& x : xs) x = x * x;
    CHECK(moment_test("exp-m2", xs, 0.5).pass); // E[X^2] = 2/rate^2
}

TEST_CASE("poisson: small and large mean") {
    RngStream rng(3, 0);
    std::vector<double> xs(100000);
    for (double& x : xs) x = static_cast<double>(rng.poisson(3.0));
    CHECK(moment_test("poisson-mean-3", xs, 3.0).pass);
    double p0 = 0.0;
    for (double x : xs) p0 += (x == 0.0) ? 1.0 : 0.0;
    p0 /= static_cast<double>(xs.size());
    CHECK(std::fabs(p0 - std::exp(-3.0)) < 4.0 * std::sqrt(0.05 / 1e5));

    for (double& x : xs) x = static_cast<double>(rng.poisson(3000.0));
    CHECK(moment_test("poisson-mean-3000", xs, 3000.0).pass);
    Moments m = moments_of(xs);
    CHECK(std::fabs(m.sd * m.sd - 3000.0) < 4.0 * 3000.0 * std::sqrt(2.0 / 1e5) + 1.0);
    CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("bernoulli frequency") {
    RngStream rng(4, 0);
    std::vector<double> xs(100000);
    for (double& x : xs) x = rng.bernoulli(0.3) ? 1.0 : 0.0;
    CHECK(moment_test("bernoulli", xs, 0.3).pass);
}

TEST_CASE("run_replicates is thread-count invariant") {
    auto fn = [](std::size_t i, RngStream& rng) {
        double s = static_cast<double>(i);
        for (int k = 0; k < 10; ++k) s += rng.uniform01();
        return s;
    };
    const auto one = run_replicates(99, 1000, 500, 1, fn);
    const auto four = run_replicates(99, 1000, 500, 4, fn);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == four[i]);
}

TEST_CASE("sum_ordered and moments_of") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    CHECK(sum_ordered(xs) == 10.0);
    const Moments m = moments_of(xs);
    CHECK(m.mean == doctest::Approx(2.5));
    CHECK(m.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
}
