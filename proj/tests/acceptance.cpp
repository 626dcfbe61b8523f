// Acceptance suite: every claim the engine must reproduce, one line each.

#include "tdual/ktheory.hpp"
#include "tdual/report.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

using namespace tdual;
using namespace tdual::abgroup;
using namespace tdual::calg;
using namespace tdual::catalog;
using namespace tdual::ktheory;
using namespace tdual::topology;

namespace {

int failures = 0;

void criterion(int number, const char* name, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

SSAlgebra uhf2() { return SSAlgebra::uhf(SupernaturalNumber::of({2})); }

CstarExpr car_bundle() {
    return CstarExpr::bundle(Space::circle(), uhf2(), CharClass::trivial());
}

DualizeActions car_actions(const Rat& factor = 2) {
    DualizeActions a;
    a.z_action = ActionDescriptor::spectrum_fixing(ActionDescriptor::trace_scaling(factor));
    a.circle_action = ActionDescriptor::translation();
    return a;
}

CstarExpr trivial_bundle(const Space& x, const SSAlgebra& a) {
    return CstarExpr::tensor({CstarExpr::functions_on(x), CstarExpr::fiber(a, true)});
}

CstarExpr eek(const Rat& factor, std::vector<Int> support) {
    return CstarExpr::crossed(
        CstarExpr::fiber(SSAlgebra::uhf(SupernaturalNumber::of(std::move(support))), true),
        CrossedGroup::Z, ActionDescriptor::trace_scaling(factor));
}

void run_01_car_classification() {
    ClassifyResult c = classify_bundles(Space::circle(), uhf2());
    bool pass = c.factors.size() == 1 && c.factors[0].first == 1 &&
                c.factors[0].second == SLocalGroup::free(1);
    criterion(1, "CAR bundles over the circle are classified by Z in degree 1", pass,
              pass ? "degree 1: " + c.factors[0].second.str() : "");
}

void run_02_o2_trivial() {
    bool pass = true;
    std::string detail;
    for (const Space& x : {Space::circle(), Space::torus(2), Space::torus(3),
                           Space::sphere(2), Space::rp2()}) {
        ClassifyResult c = classify_bundles(x, SSAlgebra::cuntz2());
        if (!c.all_trivial()) {
            pass = false;
            detail = "nontrivial factor over " + x.str();
        }
    }
    criterion(2, "O2 bundles are trivial over S1, T2, T3, S2 and RP2", pass, detail);
}

void run_03_jiangsu() {
    ClassifyResult c = classify_bundles(Space::circle(), SSAlgebra::jiang_su());
    CstarExpr reduced = simplify(
        CstarExpr::bundle(Space::circle(), SSAlgebra::jiang_su(), CharClass::trivial()));
    bool pass = c.all_trivial() &&
                reduced == trivial_bundle(Space::circle(), SSAlgebra::jiang_su());
    criterion(3, "Jiang-Su bundles over the circle are trivial and simplify to "
                 "C(S1) (x) Z (x) K",
              pass, reduced.str());
}

void run_04_t3_classification() {
    ClassifyResult c = classify_bundles(Space::torus(3), uhf2());
    bool pass = c.factors.size() == 2 &&
                c.factors[0] == std::pair{1, SLocalGroup::free(3)} &&
                c.factors[1] == std::pair{3, SLocalGroup::free(1, PrimeSet::of({2}))};
    criterion(4, "CAR bundles over T3: Z^3 in degree 1 and Z[1/2] in degree 3", pass);
}

void run_05_car_diamond() {
    Diamond d = t_dualize(car_bundle(), car_actions());
    bool pass = d.top == trivial_bundle(Space::circle(), SSAlgebra::cuntz2()) &&
                d.right == CstarExpr::fiber(SSAlgebra::cuntz2(), true) &&
                d.top.str() == "C(S1) (x) O2 (x) K" && d.right.str() == "O2 (x) K";
    criterion(5, "CAR diamond: correspondence C(S1) (x) O2 (x) K, dual corner O2 (x) K",
              pass, "top = " + d.top.str() + ", right = " + d.right.str());
}

void run_06_eek() {
    CstarExpr o2k = CstarExpr::fiber(SSAlgebra::cuntz2(), true);
    CstarExpr o4k = CstarExpr::fiber(SSAlgebra::cuntz(4), true);
    bool pass = simplify(eek(2, {2})) == o2k && simplify(eek(Rat(1, 2), {2})) == o2k &&
                simplify(eek(Rat(2, 3), {2, 3})) == o2k &&
                simplify(eek(Rat(3, 2), {2, 3})) == o2k && simplify(eek(4, {2})) == o4k;
    criterion(6, "trace-scaled crossed products: O_{|p-q|+1} (x) K in all five cases", pass);
}

void run_07_takai() {
    ActionDescriptor flow = ActionDescriptor::quasifree_irrational(false);
    CstarExpr doubled = CstarExpr::crossed(
        CstarExpr::crossed(CstarExpr::fiber(SSAlgebra::cuntz2(), false), CrossedGroup::R,
                           flow),
        CrossedGroup::R, ActionDescriptor::dual_of(flow));
    CstarExpr reduced = simplify(doubled);
    bool pass = reduced == CstarExpr::fiber(SSAlgebra::cuntz2(), true);
    criterion(7, "double flow crossed product lands back in O2 (x) K", pass, reduced.str());
}

void run_08_quasifree() {
    CstarExpr o2 = CstarExpr::fiber(SSAlgebra::cuntz2(), false);
    auto flow = [&](ActionDescriptor a) {
        return simplify(CstarExpr::crossed(o2, CrossedGroup::R, std::move(a)));
    };
    bool pass =
        flow(ActionDescriptor::quasifree_irrational(true)) ==
            CstarExpr::fiber(SSAlgebra::razak_jacelon(), true) &&
        flow(ActionDescriptor::quasifree_irrational(false)) ==
            CstarExpr::fiber(SSAlgebra::cuntz2(), true) &&
        flow(ActionDescriptor::quasifree_rational(Rat(2, 3))) ==
            CstarExpr::fiber(SSAlgebra::mapping_torus_af(2, 3), false);
    criterion(8, "quasi-free dichotomy: W (x) K, O2 (x) K, mapping torus at rational "
                 "parameter",
              pass);
}

void run_09_colimit() {
    SLocalGroup z = SLocalGroup::free(1);
    SLocalGroup colim = colimit_along(z, GroupMap::scalar(z, 2));
    SLocalGroup k0 = k_theory_ssa(uhf2())->k0;
    bool pass = colim == k0 && colim == SLocalGroup::free(1, PrimeSet::of({2}));
    criterion(9, "colimit of doubling on Z matches K0 of the CAR algebra", pass,
              colim.str());
}

void run_10_kunneth() {
    KResult k = k_of_expr(trivial_bundle(Space::torus(2), uhf2()));
    SLocalGroup expected = SLocalGroup::free(2, PrimeSet::of({2}));
    bool pass = k.evaluated() && k.value->k0 == expected && k.value->k1 == expected;
    criterion(10, "K of C(T2) (x) M_2^inf (x) K is Z[1/2]^2 in both degrees", pass,
              k.str());
}

void run_11_timelike() {
    KResult k = k_of_expr(CstarExpr::tensor(
        {CstarExpr::functions_on(Space::sphere(2)),
         CstarExpr::functions_on(Space::circle()),
         CstarExpr::fiber(SSAlgebra::jiang_su(), true)}));
    KResult space = k_of_space(Space::product({Space::sphere(2), Space::circle()}));
    bool pass = k.evaluated() && space.evaluated() && *k.value == *space.value &&
                k.value->k0 == SLocalGroup::free(2) && k.value->k1 == SLocalGroup::free(2);
    criterion(11, "K of C(S2) (x) C(S1) (x) Z (x) K is the K-theory of S2 x S1", pass,
              k.str());
}

void run_12_torsion_diamond() {
    KPair in{SLocalGroup::free(1), SLocalGroup::cyclic(2)};
    KPair out = torsion_diamond_k(in);
    bool pass = out.k0 == SLocalGroup(1, {2}, {}) && out.k0 == out.k1;
    criterion(12, "torsion corners carry K0 = K1 = K0(fixed) + K1(fixed)", pass,
              out.str());
}

void run_13_oracles() {
    bool pass = true;
    std::string detail;

    struct Pair {
        Space named;
        SimplicialComplex tri;
    };
    for (const Pair& p : {Pair{Space::circle(), triangulated_circle()},
                          Pair{Space::sphere(2), triangulated_sphere2()},
                          Pair{Space::torus(2), triangulated_torus2()},
                          Pair{Space::rp2(), triangulated_rp2()}}) {
        for (int k = 0; k <= 3 && pass; ++k)
            if (!(integral_homology(p.named, k) == homology_of_complex(p.tri, k))) {
                pass = false;
                detail = "homology mismatch for " + p.named.str() + " in degree " +
                         std::to_string(k);
            }
    }

    std::mt19937_64 rng(20240813);
    std::uniform_int_distribution<int> gens(1, 4);
    std::uniform_int_distribution<int> rels(0, 4);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 200 && pass; ++trial) {
        IntMatrix rel_k(static_cast<std::size_t>(rels(rng)), static_cast<std::size_t>(gens(rng)));
        IntMatrix rel_k1(static_cast<std::size_t>(rels(rng)),
                         static_cast<std::size_t>(gens(rng)));
        for (std::size_t i = 0; i < rel_k.rows(); ++i)
            for (std::size_t j = 0; j < rel_k.cols(); ++j) rel_k.at(i, j) = entry(rng);
        for (std::size_t i = 0; i < rel_k1.rows(); ++i)
            for (std::size_t j = 0; j < rel_k1.cols(); ++j) rel_k1.at(i, j) = entry(rng);
        SLocalGroup hk = group_from_presentation(rel_k.cols(), rel_k, {});
        SLocalGroup hk1 = group_from_presentation(rel_k1.cols(), rel_k1, {});
        SLocalGroup uct =
            direct_sum(hom_into(hk, SLocalGroup::free(1)), ext_into(hk1, SLocalGroup::free(1)));
        if (uct.free_rank() != hk.free_rank() || !(uct.torsion() == hk1.torsion())) {
            pass = false;
            detail = "universal-coefficient bookkeeping failed";
        }
    }

    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<int> entry9(-9, 9);
    for (int trial = 0; trial < 500 && pass; ++trial) {
        IntMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry9(rng);
        SmithDecomposition s = smith_normal_form(m);
        if (!(s.U * m * s.V == s.D) || abs(s.U.determinant()) != 1 ||
            abs(s.V.determinant()) != 1) {
            pass = false;
            detail = "normal-form contract failed on " + m.str();
            break;
        }
        std::size_t diag = std::min(m.rows(), m.cols());
        for (std::size_t i = 0; i + 1 < diag; ++i) {
            const Int& a = s.D.at(i, i);
            const Int& b = s.D.at(i + 1, i + 1);
            if (a == 0 ? b != 0 : !divides(a, b)) {
                pass = false;
                detail = "divisibility chain failed on " + m.str();
            }
        }
    }
    criterion(13, "oracle suite: triangulations vs formulas, 200 coefficient checks, "
                  "500 normal forms",
              pass, detail);
}

void run_14_confluence_involution() {
    bool pass = true;
    std::string detail;

    std::vector<CstarExpr> goldens = {
        car_bundle(),
        CstarExpr::crossed(car_bundle(), CrossedGroup::Z,
                           ActionDescriptor::spectrum_fixing(
                               ActionDescriptor::trace_scaling(2))),
        CstarExpr::crossed(
            CstarExpr::crossed(car_bundle(), CrossedGroup::Z,
                               ActionDescriptor::spectrum_fixing(
                                   ActionDescriptor::trace_scaling(2))),
            CrossedGroup::S1, ActionDescriptor::translation()),
        CstarExpr::crossed(CstarExpr::fiber(uhf2(), true), CrossedGroup::Z,
                           ActionDescriptor::trace_scaling(2)),
        CstarExpr::crossed(
            CstarExpr::crossed(CstarExpr::fiber(SSAlgebra::cuntz2(), false),
                               CrossedGroup::R,
                               ActionDescriptor::quasifree_irrational(false)),
            CrossedGroup::R,
            ActionDescriptor::dual_of(ActionDescriptor::quasifree_irrational(false))),
        CstarExpr::bundle(Space::circle(), SSAlgebra::jiang_su(), CharClass::trivial()),
    };
    std::mt19937_64 seeds(987654321);
    for (const CstarExpr& e : goldens) {
        CstarExpr normal = simplify(e);
        for (int run = 0; run < 100 && pass; ++run) {
            SimplifyResult r = simplify_randomized(e, seeds());
            if (!(r.expr == normal)) {
                pass = false;
                detail = "order-dependent normal form for " + e.str();
            }
        }
    }

    for (const Rat& factor : {Rat(2), Rat(1, 2)}) {
        Diamond d = t_dualize(car_bundle(), car_actions(factor));
        if (!(redualize_right_corner(d) == simplify(CstarExpr::stabilize(car_bundle())))) {
            pass = false;
            detail = "involution failed at trace " + to_string(factor);
        }
    }
    CstarExpr six = CstarExpr::bundle(Space::circle(),
                                      SSAlgebra::uhf(SupernaturalNumber::of({2, 3})),
                                      CharClass::trivial());
    Diamond d6 = t_dualize(six, car_actions(Rat(2, 3)));
    if (!(redualize_right_corner(d6) == simplify(CstarExpr::stabilize(six)))) {
        pass = false;
        detail = "involution failed for the UHF(6) bundle";
    }
    criterion(14, "confluence over 100 randomized orders per golden and the involution "
                  "check",
              pass, detail);
}

void run_15_discrepancy_notes() {
    ClassifyResult torus = classify_bundles(Space::torus(3), uhf2());
    bool torus_note = false;
    for (const auto& w : torus.warnings)
        if (w.find("discrepancy note") != std::string::npos) torus_note = true;

    KResult fermionic = k_of_expr(car_bundle());
    bool k1_note = false;
    for (const auto& w : fermionic.warnings)
        if (w.find("discrepancy note") != std::string::npos) k1_note = true;

    criterion(15, "both flagged ambiguities surface as explicit discrepancy notes",
              torus_note && k1_note,
              std::string(torus_note ? "" : "torus note missing ") +
                  (k1_note ? "" : "K1 note missing"));
}

} // namespace

int main() {
    auto start = std::chrono::steady_clock::now();
    run_01_car_classification();
    run_02_o2_trivial();
    run_03_jiangsu();
    run_04_t3_classification();
    run_05_car_diamond();
    run_06_eek();
    run_07_takai();
    run_08_quasifree();
    run_09_colimit();
    run_10_kunneth();
    run_11_timelike();
    run_12_torsion_diamond();
    run_13_oracles();
    run_14_confluence_involution();
    run_15_discrepancy_notes();
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    std::printf("%d/15 criteria passed in %lld ms\n", 15 - failures,
                static_cast<long long>(elapsed));
    return failures == 0 ? 0 : 1;
}
