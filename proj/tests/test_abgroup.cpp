#include <doctest.h>

#include "tdual/abgroup.hpp"
#include "tdual/errors.hpp"

#include <random>

using namespace tdual;
using namespace tdual::abgroup;

namespace {

IntMatrix m22(int a, int b, int c, int d) {
    return IntMatrix::from_rows({{a, b}, {c, d}});
}

// Independent rank oracle: Gaussian elimination over Q.
std::size_t rational_rank(const IntMatrix& m) {
    std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rat(m.at(i, j));
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t piv = r;
        while (piv < m.rows() && a[piv][col] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (a[i][col] == 0) continue;
            Rat f = a[i][col] / a[r][col];
            for (std::size_t j = col; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

void check_snf_contract(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    const std::size_t diag = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i + 1 < diag; ++i) {
        CHECK(s.D.at(i, i) >= 0);
        if (s.D.at(i, i) != 0)
            CHECK(divides(s.D.at(i, i), s.D.at(i + 1, i + 1)));
        else
            CHECK(s.D.at(i + 1, i + 1) == 0);
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) CHECK(s.D.at(i, j) == 0);
}

SLocalGroup random_group(std::mt19937_64& rng, int max_rank = 3) {
    std::uniform_int_distribution<int> rank_d(0, max_rank);
    std::uniform_int_distribution<int> tc_d(0, 2);
    std::uniform_int_distribution<int> ord_d(0, 7);
    std::uniform_int_distribution<int> s_d(0, 3);
    static const int orders[] = {2, 3, 4, 5, 6, 8, 9, 12};
    std::vector<Int> torsion;
    for (int i = tc_d(rng); i > 0; --i) torsion.push_back(orders[ord_d(rng)]);
    PrimeSet s;
    switch (s_d(rng)) {
        case 1: s = PrimeSet::of({2}); break;
        case 2: s = PrimeSet::of({3}); break;
        case 3: s = PrimeSet::of({2, 3}); break;
        default: break;
    }
    return SLocalGroup(rank_d(rng), torsion, s);
}

} // namespace

TEST_CASE("smith normal form: worked examples") {
    // d1 = gcd of all entries, d1*d2 = |det|; for [[2,4],[6,8]] that pins diag(2,4)
    IntMatrix m = m22(2, 4, 6, 8);
    Int entry_gcd = gcd(gcd(Int(2), Int(4)), gcd(Int(6), Int(8)));
    CHECK(entry_gcd == 2);
    CHECK(abs(m.determinant()) == 8);
    SmithDecomposition s = smith_normal_form(m);
    CHECK(s.D == m22(2, 0, 0, 4));
    check_snf_contract(m);

    CHECK(smith_normal_form(IntMatrix::identity(2)).D == IntMatrix::identity(2));

    IntMatrix z = IntMatrix::from_rows({{0}});
    CHECK(smith_normal_form(z).D == z);

    // empty matrices are legal inputs
    check_snf_contract(IntMatrix(0, 3));
    check_snf_contract(IntMatrix(3, 0));
}

TEST_CASE("smith normal form: randomized contract and rank oracle") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 120; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        check_snf_contract(m);
    }
    for (int trial = 0; trial < 60; ++trial) {
        IntMatrix m(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) m.at(i, j) = entry(rng);
        SmithDecomposition s = smith_normal_form(m);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < 5; ++i)
            if (s.D.at(i, i) != 0) ++nonzero;
        CHECK(nonzero == rational_rank(m));
    }
}

TEST_CASE("group presentations") {
    CHECK(group_from_presentation(2, IntMatrix::from_rows({{2, 0}}), {}) ==
          SLocalGroup(1, {2}, {}));
    CHECK(group_from_presentation(1, IntMatrix::from_rows({{12}}), PrimeSet::of({2})) ==
          SLocalGroup::cyclic(3));
    CHECK(group_from_presentation(1, IntMatrix(0, 0), PrimeSet::of({2})) ==
          SLocalGroup::free(1, PrimeSet::of({2})));
    CHECK_THROWS_AS(group_from_presentation(3, IntMatrix::from_rows({{1, 2}}), {}),
                    ValidationError);
}

TEST_CASE("group pretty printing") {
    CHECK(SLocalGroup::trivial().str() == "0");
    CHECK(SLocalGroup::free(1).str() == "Z");
    CHECK(SLocalGroup::free(3).str() == "Z^3");
    CHECK(SLocalGroup::free(1, PrimeSet::of({2})).str() == "Z[1/2]");
    CHECK(SLocalGroup::free(2, PrimeSet::of({2, 3})).str() == "Z[1/6]^2");
    CHECK(SLocalGroup::rationals().str() == "Q");
    CHECK(SLocalGroup(1, {2, 4}, {}).str() == "Z + Z/2 + Z/4");
    CHECK(SLocalGroup(0, {6, 2}, {}).str() == "Z/2 + Z/6");
}

TEST_CASE("tensor products") {
    // oracle: Z/m (x) Z/n presented by one generator with relations m, n
    SLocalGroup oracle =
        group_from_presentation(1, IntMatrix::from_rows({{4}, {6}}), {});
    CHECK(tensor(SLocalGroup::cyclic(4), SLocalGroup::cyclic(6)) == oracle);
    CHECK(oracle == SLocalGroup::cyclic(2));

    CHECK(tensor(SLocalGroup::free(2, PrimeSet::of({2})), SLocalGroup::free(1)) ==
          SLocalGroup::free(2, PrimeSet::of({2})));
    CHECK(tensor(SLocalGroup::free(1, PrimeSet::of({2})), SLocalGroup::cyclic(2)).is_trivial());
}

TEST_CASE("tor") {
    CHECK(tor(SLocalGroup::cyclic(4), SLocalGroup::cyclic(6)) == SLocalGroup::cyclic(2));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        SLocalGroup g = random_group(rng);
        CHECK(tor(SLocalGroup::free(1, PrimeSet::of({2})), g).is_trivial());
    }
    // localization kills the 2-torsion before Tor sees it
    SLocalGroup localized(0, {2}, PrimeSet::of({2}));
    CHECK(localized.is_trivial());
    CHECK(tor(localized, SLocalGroup::cyclic(2)).is_trivial());
}

TEST_CASE("hom and ext") {
    CHECK(ext_into(SLocalGroup::cyclic(12), SLocalGroup::free(1, PrimeSet::of({2}))) ==
          SLocalGroup::cyclic(3));
    CHECK(hom_into(SLocalGroup::cyclic(5), SLocalGroup::free(1)).is_trivial());
    CHECK(ext_into(SLocalGroup::free(1), SLocalGroup(2, {4}, {})).is_trivial());
    CHECK(hom_into(SLocalGroup::free(1), SLocalGroup(2, {4}, {})) == SLocalGroup(2, {4}, {}));
    CHECK(hom_into(SLocalGroup::cyclic(4), SLocalGroup(1, {6}, {})) == SLocalGroup::cyclic(2));
    CHECK_THROWS_AS(hom_into(SLocalGroup::free(1, PrimeSet::of({2})), SLocalGroup::free(1)),
                    ValidationError);
    // Q-coefficients stay legal: Q is divisible and torsion-free
    CHECK(ext_into(SLocalGroup::cyclic(12), SLocalGroup::rationals()).is_trivial());
    CHECK(hom_into(SLocalGroup::free(2), SLocalGroup::rationals()) == SLocalGroup::rationals(2));
}

TEST_CASE("colimits along endomorphisms") {
    SLocalGroup z = SLocalGroup::free(1);
    Colimit doubling = colimit_with_map(z, GroupMap::scalar(z, 2));
    CHECK(doubling.group == SLocalGroup::free(1, PrimeSet::of({2})));
    CHECK(doubling.first_stage.matrix == IntMatrix::from_rows({{1}}));

    std::mt19937_64 rng(99);
    for (int i = 0; i < 25; ++i) {
        SLocalGroup g = random_group(rng);
        CHECK(colimit_along(g, GroupMap::identity(g)) == g);
    }
    for (Int p : {2, 3, 5, 7}) {
        CHECK(colimit_along(z, GroupMap::scalar(z, p)) ==
              SLocalGroup::free(1, PrimeSet::of({p})));
    }

    // brute-force oracle on Z/6 under doubling: images are {0,2,4}, then stable
    {
        std::vector<int> image{1 % 6};
        auto step = [](std::vector<int> v) {
            std::vector<int> out;
            for (int x : v) out.push_back((2 * x) % 6);
            return out;
        };
        std::set<int> im1, im2;
        for (int x = 0; x < 6; ++x) im1.insert((2 * x) % 6);
        for (int x : im1) im2.insert((2 * x) % 6);
        CHECK(im1 == im2);
        CHECK(im1.size() == 3);
        (void)step;
    }
    SLocalGroup z6 = SLocalGroup::cyclic(6);
    CHECK(colimit_along(z6, GroupMap::scalar(z6, 2)) == SLocalGroup::cyclic(3));

    // nilpotent directions die in the colimit
    GroupMap nil{SLocalGroup::free(2), SLocalGroup::free(2),
                 IntMatrix::from_rows({{0, 1}, {0, 0}}), 1};
    CHECK(colimit_along(SLocalGroup::free(2), nil).is_trivial());

    GroupMap wrong{z, SLocalGroup::free(2), IntMatrix(2, 1), 1};
    CHECK_THROWS_AS(colimit_along(SLocalGroup::free(2), wrong), ValidationError);
}

TEST_CASE("isomorphism testing") {
    CHECK(is_isomorphic(SLocalGroup(0, {2, 4}, {}), SLocalGroup(0, {4, 2}, {})));
    CHECK_FALSE(is_isomorphic(SLocalGroup::cyclic(4), SLocalGroup(0, {2, 2}, {})));
    CHECK(is_isomorphic(SLocalGroup(1, {3}, PrimeSet::of({2})),
                        group_from_presentation(2, IntMatrix::from_rows({{3, 0}}),
                                                PrimeSet::of({2}))));
    // finite groups forget their localization set
    CHECK(is_isomorphic(SLocalGroup(0, {3}, PrimeSet::of({2})), SLocalGroup::cyclic(3)));
}

TEST_CASE("tensor and tor algebra on a random corpus") {
    std::mt19937_64 rng(20240812);
    SLocalGroup z = SLocalGroup::free(1);
    for (int i = 0; i < 40; ++i) {
        SLocalGroup g = random_group(rng, 4);
        SLocalGroup h = random_group(rng, 4);
        SLocalGroup k = random_group(rng, 2);
        CHECK(is_isomorphic(tensor(g, h), tensor(h, g)));
        CHECK(is_isomorphic(tor(g, h), tor(h, g)));
        CHECK(is_isomorphic(tensor(tensor(g, h), k), tensor(g, tensor(h, k))));
        CHECK(is_isomorphic(tensor(g, z), g));
        if (h.is_torsion_free()) CHECK(tor(g, h).is_trivial());
    }
}

TEST_CASE("kernels and cokernels of group maps") {
    SLocalGroup z = SLocalGroup::free(1);
    CHECK(cokernel_of(GroupMap::scalar(z, 2)) == SLocalGroup::cyclic(2));
    CHECK(kernel_of(GroupMap::scalar(z, 2)).is_trivial());

    SLocalGroup z4 = SLocalGroup::cyclic(4);
    CHECK(kernel_of(GroupMap::scalar(z4, 2)) == SLocalGroup::cyclic(2));
    CHECK(cokernel_of(GroupMap::scalar(z4, 2)) == SLocalGroup::cyclic(2));

    // denominators over the localized target: x -> 3/2 x on Z[1/2]
    SLocalGroup zloc = SLocalGroup::free(1, PrimeSet::of({2}));
    GroupMap three_halves = GroupMap::scalar(zloc, 3, 2);
    CHECK(kernel_of(three_halves).is_trivial());
    CHECK(cokernel_of(three_halves) == SLocalGroup::cyclic(3));
    CHECK(colimit_along(zloc, three_halves) == SLocalGroup::free(1, PrimeSet::of({2, 3})));
}

TEST_CASE("colimit along e agrees with colimit along e squared") {
    // stages 0, 2, 4, ... are cofinal, so both systems have the same limit
    std::mt19937_64 rng(271828);
    std::uniform_int_distribution<int> scalar(-6, 6);
    for (int trial = 0; trial < 30; ++trial) {
        SLocalGroup g = random_group(rng);
        int n = scalar(rng);
        if (n == 0) continue;
        GroupMap e = GroupMap::scalar(g, n);
        GroupMap ee = GroupMap::scalar(g, Int(n) * n);
        CHECK(is_isomorphic(colimit_along(g, e), colimit_along(g, ee)));
    }
    // matrix endomorphisms of (Z/n)^k are unconstrained, a good fuzz space
    std::uniform_int_distribution<int> order_d(2, 9);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
        int n = order_d(rng);
        std::size_t k = 1 + static_cast<std::size_t>(rng() % 3);
        SLocalGroup g(0, std::vector<Int>(k, Int(n)), {});
        std::size_t gens = g.generator_count();
        IntMatrix m(gens, gens);
        for (std::size_t i = 0; i < gens; ++i)
            for (std::size_t j = 0; j < gens; ++j) m.at(i, j) = entry(rng);
        GroupMap e{g, g, m, 1};
        GroupMap ee{g, g, m * m, 1};
        CHECK(is_isomorphic(colimit_along(g, e), colimit_along(g, ee)));
    }
}

TEST_CASE("kernels inside mixed free and torsion groups") {
    // (x, t) -> x + t in Z/4 on Z (+) Z/4: the kernel {(x, -x)} is free of rank 1
    SLocalGroup source(1, {4}, {});
    SLocalGroup target = SLocalGroup::cyclic(4);
    GroupMap f{source, target, IntMatrix::from_rows({{1, 1}}), 1};
    CHECK(kernel_of(f) == SLocalGroup::free(1));
    CHECK(cokernel_of(f).is_trivial()); // x covers everything

    // subgroup of Z (+) Z/4 generated by (2, 1): infinite cyclic (8x the
    // generator is (16, 0), never zero)
    IntMatrix gen(2, 1);
    gen.at(0, 0) = 2;
    gen.at(1, 0) = 1;
    CHECK(subgroup_generated(source, gen) == SLocalGroup::free(1));
    // subgroup of Z/4 generated by 2
    IntMatrix two(1, 1);
    two.at(0, 0) = 2;
    CHECK(subgroup_generated(target, two) == SLocalGroup::cyclic(2));
}

TEST_CASE("group map validation") {
    SLocalGroup z2 = SLocalGroup::cyclic(2);
    SLocalGroup z = SLocalGroup::free(1);
    GroupMap bad{z2, z, IntMatrix::from_rows({{1}}), 1};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    GroupMap bad_den{z, z, IntMatrix::from_rows({{1}}), 2};
    CHECK_THROWS_AS(bad_den.validate(), ValidationError);
    GroupMap good{z2, SLocalGroup::cyclic(4), IntMatrix::from_rows({{2}}), 1};
    CHECK_NOTHROW(good.validate());
}
