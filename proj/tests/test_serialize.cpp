#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "genea/rng.hpp"
#include "genea/serialize.hpp"

using namespace genea;

TEST_CASE("json golden for a small process") {
    AncestralProcess ap;
    ap.e_g = 1.0;
    ap.e_d = 4.0;
    ap.atoms = {{1.0, 2.0}, {3.0, 5.0}};
    CHECK(to_json({1.0, 1.0}, ap) ==
          "{\"beta\":1,\"theta\":1,\"e_g\":1,\"e_d\":4,"
          "\"atoms\":[{\"u\":1,\"zeta\":2},{\"u\":3,\"zeta\":5}]}");
}

TEST_CASE("format_double round-trips arbitrary doubles") {
    RngStream rng(101, 0);
    for (int i = 0; i < 2000; ++i) {
        const double x = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("json round trip is bit exact") {
    RngStream rng(102, 0);
    for (int rep = 0; rep < 100; ++rep) {
        AncestralProcess ap;
        ap.e_g = rng.exponential(1.0) + 1e-9;
        ap.e_d = rng.exponential(1.0) + 1e-9;
        const int m = static_cast<int>(rng.uniform01() * 10.0);
        for (int k = 0; k < m; ++k) {
            double u;
            do {
                u = rng.uniform(-ap.e_g, ap.e_d);
            } while (u == 0.0);
            ap.atoms.push_back({u, rng.exponential(1.0)});
        }
        std::sort(ap.atoms.begin(), ap.atoms.end(),
                  [](const Atom& a, const Atom& b) { return a.u < b.u; });
        if (validate(ap)) continue;
        const BranchingParams p{0.5 + rng.uniform01(), 0.5 + rng.uniform01()};
        BranchingParams q;
        const AncestralProcess back = ancestral_process_from_json(to_json(p, ap), &q);
        CHECK(q.beta == p.beta);
        CHECK(q.theta == p.theta);
        CHECK(back.e_g == ap.e_g);
        CHECK(back.e_d == ap.e_d);
        REQUIRE(back.atoms.size() == ap.atoms.size());
        for (std::size_t i = 0; i < ap.atoms.size(); ++i) {
            CHECK(back.atoms[i].u == ap.atoms[i].u);
            CHECK(back.atoms[i].zeta == ap.atoms[i].zeta);
        }
    }
}

TEST_CASE("json reader rejects malformed input") {
    CHECK_THROWS_AS(ancestral_process_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(ancestral_process_from_json("{\"beta\":1}"), std::invalid_argument);
    // duplicate positions
    CHECK_THROWS_AS(ancestral_process_from_json(
                        "{\"beta\":1,\"theta\":1,\"e_g\":1,\"e_d\":1,"
                        "\"atoms\":[{\"u\":0.3,\"zeta\":1},{\"u\":0.3,\"zeta\":2}]}"),
                    std::invalid_argument);
}

TEST_CASE("to_json requires finite boundaries") {
    AncestralProcess ap; // default boundaries are +inf
    CHECK_THROWS_AS(to_json({1.0, 1.0}, ap), std::invalid_argument);
}

TEST_CASE("atoms csv") {
    AncestralProcess ap;
    ap.e_g = 1.0;
    ap.e_d = 4.0;
    ap.atoms = {{1.0, 2.0}, {3.0, 5.0}};
    CHECK(atoms_csv(ap) == "u,zeta\n1,2\n3,5\n");
}
