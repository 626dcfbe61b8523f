#include <doctest.h>

#include "tdual/catalog.hpp"
#include "tdual/errors.hpp"

using namespace tdual;
using namespace tdual::abgroup;
using namespace tdual::catalog;

namespace {

std::vector<SSAlgebra> full_catalog() {
    return {
        SSAlgebra::complex(),
        SSAlgebra::jiang_su(),
        SSAlgebra::uhf(SupernaturalNumber::of({2})),
        SSAlgebra::uhf(SupernaturalNumber::of({3})),
        SSAlgebra::uhf(SupernaturalNumber::of({2, 3})),
        SSAlgebra::uhf(SupernaturalNumber::all()),
        SSAlgebra::cuntz2(),
        SSAlgebra::cuntz_inf(),
        SSAlgebra::uhf_tensor_oinf(SupernaturalNumber::of({2})),
        SSAlgebra::uhf_tensor_oinf(SupernaturalNumber::of({5})),
        SSAlgebra::razak_jacelon(),
    };
}

} // namespace

TEST_CASE("tensor table worked examples") {
    SSAlgebra uhf2 = SSAlgebra::uhf(SupernaturalNumber::of({2}));
    SSAlgebra uhf3 = SSAlgebra::uhf(SupernaturalNumber::of({3}));
    CHECK(tensor_ssa(SSAlgebra::cuntz2(), uhf2) == SSAlgebra::cuntz2());
    CHECK(tensor_ssa(SSAlgebra::complex(), SSAlgebra::jiang_su()) == SSAlgebra::jiang_su());
    CHECK(tensor_ssa(uhf2, uhf3) == SSAlgebra::uhf(SupernaturalNumber::of({2, 3})));
    CHECK(tensor_ssa(uhf2, SSAlgebra::cuntz_inf()) ==
          SSAlgebra::uhf_tensor_oinf(SupernaturalNumber::of({2})));
    CHECK(tensor_ssa(SSAlgebra::cuntz_inf(), SSAlgebra::cuntz_inf()) == SSAlgebra::cuntz_inf());
    CHECK_THROWS_AS(tensor_ssa(SSAlgebra::cuntz(3), uhf2), UnsupportedError);
}

TEST_CASE("tensor table is commutative, associative and idempotent") {
    auto algebras = full_catalog();
    for (const auto& a : algebras) {
        CHECK(tensor_ssa(a, a) == a);
        for (const auto& b : algebras) {
            CHECK(tensor_ssa(a, b) == tensor_ssa(b, a));
            for (const auto& c : algebras)
                CHECK(tensor_ssa(tensor_ssa(a, b), c) == tensor_ssa(a, tensor_ssa(b, c)));
        }
    }
}

TEST_CASE("O2 absorbs the whole catalog") {
    for (const auto& a : full_catalog())
        CHECK(tensor_ssa(SSAlgebra::cuntz2(), a) == SSAlgebra::cuntz2());
}

TEST_CASE("Oinf absorption for the purely infinite variants") {
    for (const auto& a : full_catalog())
        if (is_purely_infinite(a)) CHECK(tensor_ssa(a, SSAlgebra::cuntz_inf()) == a);
}

TEST_CASE("K-theory table") {
    SSAlgebra uhf2 = SSAlgebra::uhf(SupernaturalNumber::of({2}));
    CHECK(k_theory_ssa(uhf2)->k0 == SLocalGroup::free(1, PrimeSet::of({2})));
    CHECK(k_theory_ssa(uhf2)->k1.is_trivial());
    CHECK(k_theory_ssa(SSAlgebra::jiang_su())->k0 == SLocalGroup::free(1));
    CHECK(k_theory_ssa(SSAlgebra::cuntz(3))->k0 == SLocalGroup::cyclic(2));
    CHECK(k_theory_ssa(SSAlgebra::cuntz2())->k0.is_trivial());
    CHECK(k_theory_ssa(SSAlgebra::razak_jacelon())->k0.is_trivial());
    CHECK(k_theory_ssa(SSAlgebra::uhf(SupernaturalNumber::all()))->k0 ==
          SLocalGroup::rationals());
    CHECK_FALSE(k_theory_ssa(SSAlgebra::mapping_torus_af(2, 1)).has_value());

    // tensor table consistency: K0(UHF(S) (x) UHF(T)) localizes at the union
    SSAlgebra uhf23 = tensor_ssa(uhf2, SSAlgebra::uhf(SupernaturalNumber::of({3})));
    CHECK(k_theory_ssa(uhf23)->k0 == SLocalGroup::free(1, PrimeSet::of({2, 3})));
}

TEST_CASE("positive unit groups") {
    UnitsGroup u2 = units_positive(SSAlgebra::uhf(SupernaturalNumber::of({2})));
    CHECK(u2.group == SLocalGroup::free(1));
    CHECK(u2.generator_names == std::vector<std::string>{"2"});

    CHECK(units_positive(SSAlgebra::jiang_su()).group.is_trivial());
    CHECK(units_positive(SSAlgebra::cuntz2()).group.is_trivial());

    UnitsGroup u23 = units_positive(SSAlgebra::uhf(SupernaturalNumber::of({2, 3})));
    CHECK(u23.group == SLocalGroup::free(2));

    UnitsGroup oinf = units_positive(SSAlgebra::cuntz_inf());
    CHECK(oinf.group.is_trivial());
    CHECK_FALSE(oinf.assumption_notes.empty());

    CHECK(units_positive(SSAlgebra::uhf(SupernaturalNumber::all())).symbolic_infinite);
    CHECK_THROWS_AS(units_positive(SSAlgebra::cuntz(4)), UnsupportedError);
}

TEST_CASE("finiteness dichotomy") {
    CHECK(is_purely_infinite(SSAlgebra::cuntz2()));
    CHECK_FALSE(is_purely_infinite(SSAlgebra::uhf(SupernaturalNumber::of({2}))));
    CHECK(is_purely_infinite(SSAlgebra::uhf_tensor_oinf(SupernaturalNumber::of({2}))));
    CHECK_FALSE(is_purely_infinite(SSAlgebra::razak_jacelon()));
    for (const auto& a : full_catalog())
        CHECK(is_purely_infinite(a) != is_stably_finite(a));
}

TEST_CASE("fiber-name parsing") {
    CHECK(parse_algebra("C") == SSAlgebra::complex());
    CHECK(parse_algebra("Z") == SSAlgebra::jiang_su());
    CHECK(parse_algebra("O2") == SSAlgebra::cuntz2());
    CHECK(parse_algebra("Oinf") == SSAlgebra::cuntz_inf());
    CHECK(parse_algebra("W") == SSAlgebra::razak_jacelon());
    CHECK(parse_algebra("UHF:2") == SSAlgebra::uhf(SupernaturalNumber::of({2})));
    CHECK(parse_algebra("UHF:2,3") == SSAlgebra::uhf(SupernaturalNumber::of({2, 3})));
    CHECK(parse_algebra("UHF:4") == SSAlgebra::uhf(SupernaturalNumber::of({2})));
    CHECK(parse_algebra("UHF:2*Oinf") ==
          SSAlgebra::uhf_tensor_oinf(SupernaturalNumber::of({2})));
    CHECK(parse_algebra("UHF:ALL") == SSAlgebra::uhf(SupernaturalNumber::all()));
    CHECK_THROWS_AS(parse_algebra("E8"), ValidationError);
    CHECK_THROWS_AS(parse_algebra("UHF:1"), ValidationError);
}

TEST_CASE("cuntz algebras canonicalize") {
    CHECK(SSAlgebra::cuntz(2) == SSAlgebra::cuntz2());
    CHECK(SSAlgebra::cuntz(3).is_derived());
    CHECK(k_theory_ssa(SSAlgebra::cuntz(2))->k0.is_trivial());
    CHECK_THROWS_AS(SSAlgebra::cuntz(1), ValidationError);
}
