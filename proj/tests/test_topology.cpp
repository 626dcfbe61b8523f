#include <doctest.h>

#include "tdual/errors.hpp"
#include "tdual/topology.hpp"

#include <random>

using namespace tdual;
using namespace tdual::abgroup;
using namespace tdual::topology;

namespace {

const SLocalGroup kZ = SLocalGroup::free(1);

// Named spaces paired with oracle triangulations.
struct OraclePair {
    Space named;
    SimplicialComplex triangulated;
};

std::vector<OraclePair> oracle_pairs() {
    return {
        {Space::circle(), triangulated_circle()},
        {Space::sphere(2), triangulated_sphere2()},
        {Space::torus(2), triangulated_torus2()},
        {Space::rp2(), triangulated_rp2()},
    };
}

} // namespace

TEST_CASE("chain complexes: boundary of a boundary vanishes") {
    for (const auto& k : {triangulated_point(), triangulated_circle(), triangulated_sphere2(),
                          triangulated_torus2(), triangulated_rp2()}) {
        auto boundaries = chain_complex(k);
        for (std::size_t i = 0; i + 1 < boundaries.size(); ++i)
            CHECK((boundaries[i] * boundaries[i + 1]).is_zero());
    }
}

TEST_CASE("chain complexes: sign conventions") {
    // hollow triangle: every boundary column sums to zero
    auto circle = chain_complex(triangulated_circle());
    REQUIRE(circle.size() == 1);
    CHECK(circle[0].rows() == 3);
    CHECK(circle[0].cols() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        Int sum = 0;
        for (std::size_t i = 0; i < 3; ++i) sum += circle[0].at(i, j);
        CHECK(sum == 0);
    }

    // single filled 2-simplex: column (+1, -1, +1) against lexicographic edges
    SimplicialComplex filled{3, {{0, 1, 2}}};
    auto b = chain_complex(filled);
    REQUIRE(b.size() == 2);
    REQUIRE(b[1].rows() == 3);
    CHECK(b[1].at(0, 0) == 1);  // edge {0,1}
    CHECK(b[1].at(1, 0) == -1); // edge {0,2}
    CHECK(b[1].at(2, 0) == 1);  // edge {1,2}

    CHECK_THROWS_AS(chain_complex(SimplicialComplex{2, {{0, 0}}}), ValidationError);
}

TEST_CASE("triangulated homology matches the named formulas") {
    for (const auto& [named, tri] : oracle_pairs()) {
        for (int k = 0; k <= 3; ++k) {
            CAPTURE(named.str());
            CAPTURE(k);
            CHECK(integral_homology(named, k) == homology_of_complex(tri, k));
        }
    }
}

TEST_CASE("homology worked examples") {
    CHECK(integral_homology(Space::circle(), 1) == kZ);
    CHECK(integral_homology(Space::rp2(), 1) == SLocalGroup::cyclic(2));
    CHECK(integral_homology(Space::torus(3), 2) == SLocalGroup::free(3));
    CHECK_THROWS_AS(
        integral_homology(Space::fiber_product(Space::circle(), Space::circle(),
                                               Space::point()),
                          1),
        UnsupportedError);
}

TEST_CASE("3-torus: Kunneth route agrees with the triangulated product") {
    SimplicialComplex t3 = triangulated_torus(3);
    for (int k = 0; k <= 3; ++k) {
        CAPTURE(k);
        CHECK(integral_homology(Space::torus(3), k) == homology_of_complex(t3, k));
    }
}

TEST_CASE("euler characteristic: Betti ranks against simplex counts") {
    for (const auto& [named, tri] : oracle_pairs()) {
        long from_betti = 0;
        int sign = 1;
        for (int k = 0; k <= tri.dimension(); ++k) {
            from_betti += sign * integral_homology(named, k).free_rank();
            sign = -sign;
        }
        CHECK(from_betti == euler_characteristic(tri));
    }
}

TEST_CASE("cohomology via universal coefficients") {
    CHECK(cohomology(Space::circle(), 1, kZ) == kZ);
    CHECK(cohomology(Space::rp2(), 2, kZ) == SLocalGroup::cyclic(2));
    CHECK(cohomology(Space::torus(3), 3, SLocalGroup::free(1, PrimeSet::of({2}))) ==
          SLocalGroup::free(1, PrimeSet::of({2})));
    // Q coefficients are fine; torsion just dies
    CHECK(cohomology(Space::rp2(), 2, SLocalGroup::rationals()).is_trivial());
}

TEST_CASE("UCT bookkeeping: free rank from H_k, torsion from H_{k-1}") {
    for (const auto& [named, tri] : oracle_pairs()) {
        for (int k = 0; k <= 3; ++k) {
            SLocalGroup hk = integral_homology(named, k);
            SLocalGroup hk1 = integral_homology(named, k - 1);
            SLocalGroup coh = cohomology(named, k, kZ);
            CHECK(coh.free_rank() == hk.free_rank());
            CHECK(coh.torsion() == hk1.torsion());
        }
    }
}

TEST_CASE("Kunneth homology worked examples") {
    CHECK(kunneth_homology(Space::circle(), Space::circle(), 1) == SLocalGroup::free(2));
    CHECK(kunneth_homology(Space::rp2(), Space::circle(), 2) == SLocalGroup::cyclic(2));
    CHECK(kunneth_homology(Space::sphere(2), Space::circle(), 3) == kZ);
}

TEST_CASE("gysin pushforward") {
    Space t2 = Space::torus(2);
    SLocalGroup h3 = cohomology(Space::torus(3), 3, kZ);
    REQUIRE(h3 == kZ);

    // k * volume form of T^3 = (k * vol T^2) x dtheta
    for (int k : {0, 1, 5, -3}) {
        CohClass flux = CohClass::zero(3, h3);
        flux.components[0] = k;
        CohClass pushed = gysin_pushforward(t2, flux, kZ);
        CHECK(pushed.degree == 2);
        CHECK(pushed.group == kZ);
        CHECK(pushed.components[0] == k);
    }

    // base-degree classes die: H^2(T^2 x S1) = H^2(T^2) + H^1(T^2)
    CircleKunnethBlocks blocks = circle_kunneth_blocks(t2, 2, kZ);
    REQUIRE(blocks.top == kZ);
    REQUIRE(blocks.fiber == SLocalGroup::free(2));
    CohClass mixed = CohClass::zero(2, blocks.total());
    mixed.components[0] = 7; // (x)1 component
    mixed.components[1] = 2;
    mixed.components[2] = -1;
    CohClass pushed = gysin_pushforward(t2, mixed, kZ);
    CHECK(pushed.components == std::vector<Int>{2, -1});

    // additivity and the kill rule on random classes
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int trial = 0; trial < 30; ++trial) {
        for (int deg : {1, 2, 3}) {
            CircleKunnethBlocks bl = circle_kunneth_blocks(t2, deg, kZ);
            CohClass a = CohClass::zero(deg, bl.total());
            CohClass b = CohClass::zero(deg, bl.total());
            for (auto& v : a.components) v = coeff(rng);
            for (auto& v : b.components) v = coeff(rng);
            CohClass sum = a;
            for (std::size_t i = 0; i < sum.components.size(); ++i)
                sum.components[i] += b.components[i];
            CohClass pa = gysin_pushforward(t2, a, kZ);
            CohClass pb = gysin_pushforward(t2, b, kZ);
            CohClass ps = gysin_pushforward(t2, sum, kZ);
            for (std::size_t i = 0; i < ps.components.size(); ++i)
                CHECK(ps.components[i] == pa.components[i] + pb.components[i]);
            // classes pulled back from the base push to zero
            CohClass base_only = a;
            for (std::size_t i = bl.top.generator_count(); i < base_only.components.size();
                 ++i)
                base_only.components[i] = 0;
            CHECK(gysin_pushforward(t2, base_only, kZ).is_zero());
        }
    }
}
