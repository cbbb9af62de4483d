#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <involcode/atlas.hpp>
#include <involcode/simplicial.hpp>

#include "support/fixtures.hpp"
#include "support/naive_homology.hpp"

using namespace involcode;

TEST_CASE("production betti numbers match the naive oracle on random complexes") {
    std::mt19937 rng(20260815);
    for (int it = 0; it < 50; ++it) {
        SimplicialComplex c = fixtures::random_complex(rng);
        INFO("iteration " << it << ", total simplices " << c.total_cells());
        REQUIRE(c.total_cells() <= 300);
        CHECK(betti_numbers(c) == naive::betti_numbers(c));
    }
}

TEST_CASE("oracle agreement on the named fixtures") {
    CHECK(betti_numbers(fixtures::rp2_6()) ==
          naive::betti_numbers(fixtures::rp2_6()));
    CHECK(betti_numbers(fixtures::torus_7()) ==
          naive::betti_numbers(fixtures::torus_7()));
    CHECK(betti_numbers(fixtures::octahedron()) ==
          naive::betti_numbers(fixtures::octahedron()));
    CHECK(betti_numbers(fixtures::boundary_4simplex()) ==
          naive::betti_numbers(fixtures::boundary_4simplex()));
}

TEST_CASE("kuhn 3-torus has mod-2 betti numbers 1,3,3,1") {
    SimplicialComplex t3 = torus_conjugation(4).complex;
    std::vector<std::size_t> b = betti_numbers(t3);
    REQUIRE(b == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(naive::betti_numbers(t3) == b);
    CHECK(total_mod2_dimension(t3) == 8);
}

TEST_CASE("production path agrees with the oracle after one subdivision") {
    std::mt19937 rng(424242);
    for (int it = 0; it < 8; ++it) {
        SimplicialComplex c = fixtures::random_complex(rng);
        SimplicialComplex sd = barycentric_subdivision(c).complex;
        if (sd.total_cells() > 300) continue;
        CHECK(betti_numbers(sd) == naive::betti_numbers(sd));
    }
}
