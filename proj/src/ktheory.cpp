#include "tdual/ktheory.hpp"

#include "tdual/errors.hpp"

#include <algorithm>

namespace tdual::ktheory {

using abgroup::GroupMap;
using abgroup::IntMatrix;
using abgroup::SLocalGroup;
using calg::ActionKind;
using calg::CstarExpr;
using calg::ExprKind;
using catalog::AlgebraKind;
using topology::Space;
using topology::SpaceKind;

std::string KResult::str() const {
    if (value) return value->str();
    return "unevaluated: " + unevaluated_reason;
}

KEndomorphism KEndomorphism::identity(const KPair& k) {
    return {GroupMap::identity(k.k0), GroupMap::identity(k.k1)};
}

KEndomorphism KEndomorphism::scalar(const KPair& k, const Int& num, const Int& den) {
    return {GroupMap::scalar(k.k0, num, den), GroupMap::scalar(k.k1, num, den)};
}

void KEndomorphism::validate(const KPair& k) const {
    if (!(on_k0.source == k.k0) || !(on_k0.target == k.k0) || !(on_k1.source == k.k1) ||
        !(on_k1.target == k.k1))
        throw ValidationError("KEndomorphism: maps are not endomorphisms of the given pair");
    on_k0.validate();
    on_k1.validate();
}

// --- spaces ------------------------------------------------------------------------

KResult k_of_space(const Space& x) {
    KResult r;
    switch (x.kind()) {
        case SpaceKind::Point:
            r.value = KPair{SLocalGroup::free(1), SLocalGroup::trivial()};
            return r;
        case SpaceKind::RealProjectivePlane:
            r.value = KPair{SLocalGroup(1, {2}, {}), SLocalGroup::trivial()};
            r.trace.push_back({"k-of-space", "RP2 -> (Z + Z/2, 0)", "stored constant"});
            return r;
        case SpaceKind::Circle:
        case SpaceKind::Sphere:
        case SpaceKind::Torus: {
            // torsion-free: K0 = even cohomology, K1 = odd
            SLocalGroup even, odd;
            SLocalGroup integers = SLocalGroup::free(1);
            for (int k = 0; k <= x.dimension(); ++k) {
                SLocalGroup hk = topology::cohomology(x, k, integers);
                (k % 2 == 0 ? even : odd) = direct_sum(k % 2 == 0 ? even : odd, hk);
            }
            r.value = KPair{even, odd};
            r.trace.push_back({"k-of-space", x.str() + " via even/odd cohomology",
                               "Chern-character route for torsion-free spaces"});
            return r;
        }
        case SpaceKind::Product: {
            const auto& fs = x.factors();
            KResult acc = k_of_space(fs.front());
            for (std::size_t i = 1; i < fs.size(); ++i) {
                acc = kunneth_c(acc, k_of_space(fs[i]));
                if (!acc.evaluated()) return acc;
            }
            return acc;
        }
        default:
            r.unevaluated_reason =
                "K-theory of " + x.str() + " is outside the named catalog";
            return r;
    }
}

// --- Kunneth -----------------------------------------------------------------------

KResult kunneth_c(const KResult& a, const KResult& b) {
    KResult r;
    if (!a.evaluated() || !b.evaluated()) {
        r.unevaluated_reason = !a.evaluated() ? a.unevaluated_reason : b.unevaluated_reason;
        return r;
    }
    r.warnings = a.warnings;
    r.warnings.insert(r.warnings.end(), b.warnings.begin(), b.warnings.end());
    const KPair& ka = *a.value;
    const KPair& kb = *b.value;
    SLocalGroup tor00 = tor(ka.k0, kb.k0);
    SLocalGroup tor01 = tor(ka.k0, kb.k1);
    SLocalGroup tor10 = tor(ka.k1, kb.k0);
    SLocalGroup tor11 = tor(ka.k1, kb.k1);
    if (!(tor00.is_trivial() && tor01.is_trivial() && tor10.is_trivial() &&
          tor11.is_trivial())) {
        r.unevaluated_reason =
            "extension-ambiguity: the graded Kunneth sequence has nonvanishing Tor and "
            "the engine does not choose a splitting";
        return r;
    }
    r.value = KPair{direct_sum(tensor(ka.k0, kb.k0), tensor(ka.k1, kb.k1)),
                    direct_sum(tensor(ka.k0, kb.k1), tensor(ka.k1, kb.k0))};
    r.trace = a.trace;
    r.trace.insert(r.trace.end(), b.trace.begin(), b.trace.end());
    r.trace.push_back({"kunneth", ka.str() + " (x) " + kb.str() + " -> " + r.value->str(),
                       "Kunneth formula for C*-algebras"});
    return r;
}

KPair connes_thom(const KPair& k) { return {k.k1, k.k0}; }

// --- Pimsner-Voiculescu ---------------------------------------------------------------

namespace {

// 1 - e as a numerator matrix over the target localization.
GroupMap one_minus(const GroupMap& e) {
    GroupMap out = e;
    IntMatrix m = e.matrix.scaled(-1);
    for (std::size_t i = 0; i < m.rows() && i < m.cols(); ++i)
        m.at(i, i) += e.denominator;
    out.matrix = std::move(m);
    return out;
}

} // namespace

KResult pimsner_voiculescu(const KPair& k, const KEndomorphism& e) {
    e.validate(k);
    GroupMap d0 = one_minus(e.on_k0);
    GroupMap d1 = one_minus(e.on_k1);
    SLocalGroup coker0 = cokernel_of(d0);
    SLocalGroup coker1 = cokernel_of(d1);
    SLocalGroup ker0 = kernel_of(d0);
    SLocalGroup ker1 = kernel_of(d1);

    KResult r;
    // K_i of the crossed product sits in 0 -> coker_i -> K_i -> ker_{1-i} -> 0.
    if (!ker0.is_torsion_free() || !ker1.is_torsion_free()) {
        r.unevaluated_reason =
            "the six-term extension does not split for free reasons; constraints: "
            "0 -> " + coker0.str() + " -> K0 -> " + ker1.str() + " -> 0 and 0 -> " +
            coker1.str() + " -> K1 -> " + ker0.str() + " -> 0";
        return r;
    }
    r.value = KPair{direct_sum(coker0, ker1), direct_sum(coker1, ker0)};
    r.trace.push_back({"pimsner-voiculescu",
                       "coker(1-e) and ker(1-e) assembled per degree",
                       "Pimsner-Voiculescu exact sequence"});
    return r;
}

// --- Schafhauser colimit -----------------------------------------------------------------

SchafhauserResult schafhauser_map(const KPair& k, const KEndomorphism& h) {
    h.validate(k);
    abgroup::Colimit c0 = colimit_with_map(k.k0, h.on_k0);
    abgroup::Colimit c1 = colimit_with_map(k.k1, h.on_k1);
    return {KPair{c0.group, c1.group}, c0.first_stage, c1.first_stage};
}

KPair torsion_diamond_k(const KPair& fixed_point) {
    SLocalGroup g = direct_sum(fixed_point.k0, fixed_point.k1);
    return {g, g};
}

// --- structural evaluation ------------------------------------------------------------------

namespace {

KResult unevaluated(std::string reason) {
    KResult r;
    r.unevaluated_reason = std::move(reason);
    return r;
}

bool is_rokhlin_flow(const calg::ActionDescriptor& a) {
    return a.rokhlin_dimension == calg::RokhlinDimension::Zero;
}

// Endomorphism induced on K-theory by the recorded module/action data, when
// the engine can read it off.
std::optional<KEndomorphism> induced_endomorphism(const KPair& k,
                                                  const calg::ActionDescriptor& a) {
    const calg::ActionDescriptor& core =
        a.kind == ActionKind::SpectrumFixing ? *a.inner : a;
    if (core.kind == ActionKind::TraceScaling) {
        // trace scaling by p/q multiplies the trace pairing on K0 by p/q
        Int p = core.factor.get_num();
        Int q = core.factor.get_den();
        try {
            return KEndomorphism::scalar(k, p, q);
        } catch (const ValidationError&) {
            return std::nullopt; // denominator not invertible in this K-theory
        }
    }
    return std::nullopt;
}

KResult k_of_simplified(const CstarExpr& e) {
    switch (e.kind()) {
        case ExprKind::FunctionsOn:
            return k_of_space(e.space());
        case ExprKind::Fiber: {
            auto pair = catalog::k_theory_ssa(e.algebra());
            if (!pair)
                return unevaluated("K-theory of " + e.algebra().str() +
                                   " is kept as an unevaluated marker");
            KResult r;
            r.value = *pair;
            if (e.algebra().kind() == AlgebraKind::RazakJacelon)
                r.warnings.push_back("assumption: K-theory of W taken as (0, 0), the "
                                     "standard external value");
            return r;
        }
        case ExprKind::Stabilize:
            return k_of_simplified(e.children().front());
        case ExprKind::Tensor: {
            KResult acc = k_of_simplified(e.children().front());
            for (std::size_t i = 1; i < e.children().size(); ++i) {
                if (!acc.evaluated()) return acc;
                acc = kunneth_c(acc, k_of_simplified(e.children()[i]));
            }
            // flag the circle-factor UHF products whose odd part is disputed
            if (acc.evaluated()) {
                bool circle = false;
                bool uhf = false;
                for (const CstarExpr& c : e.children()) {
                    if (c.kind() == ExprKind::FunctionsOn && c.space() == Space::circle())
                        circle = true;
                    if (c.kind() == ExprKind::Fiber &&
                        (c.algebra().kind() == AlgebraKind::UHF))
                        uhf = true;
                }
                if (circle && uhf)
                    acc.warnings.push_back(
                        "discrepancy note: K1 of the trivial UHF bundle over the circle is "
                        "computed as the odd Kunneth part (nonzero); a vanishing K1 is "
                        "sometimes asserted for this algebra and is not adopted here");
            }
            return acc;
        }
        case ExprKind::BundleAlg:
            return unevaluated("K-theory of the bundle with nontrivial class " +
                               e.char_class().str() + " needs data the engine does not "
                               "model (no spectral sequence)");
        case ExprKind::Crossed: {
            KResult inner = k_of_simplified(e.children().front());
            if (!inner.evaluated()) return inner;
            if (e.group() == calg::CrossedGroup::R) {
                if (is_rokhlin_flow(e.action())) {
                    KResult r;
                    r.value = connes_thom(*inner.value);
                    r.trace = inner.trace;
                    r.warnings = inner.warnings;
                    r.trace.push_back({"connes-thom", "degree shift for the flow",
                                       "Connes-Thom isomorphism"});
                    return r;
                }
                return unevaluated("flow without the Rokhlin property: no K-theory rule");
            }
            if (e.group() == calg::CrossedGroup::Z) {
                std::optional<KEndomorphism> endo =
                    induced_endomorphism(*inner.value, e.action());
                if (!endo)
                    return unevaluated("no induced K-endomorphism recorded for the action " +
                                       e.action().str());
                KResult r = pimsner_voiculescu(*inner.value, *endo);
                for (auto& w : inner.warnings) r.warnings.push_back(w);
                return r;
            }
            return unevaluated("crossed product by " + calg::group_str(e.group(), e.zn()) +
                               ": no K-theory rule applies");
        }
        case ExprKind::CuntzPimsner: {
            const calg::ModuleTag& m = e.module_tag();
            KResult inner = k_of_simplified(e.children().front());
            if (!inner.evaluated()) return inner;
            if (!m.twist)
                return unevaluated("opaque Cuntz-Pimsner module '" + m.opaque + "'");
            std::optional<KEndomorphism> endo = induced_endomorphism(*inner.value, *m.twist);
            if (!endo)
                return unevaluated("no induced K-endomorphism recorded for the module twist");
            SchafhauserResult s = schafhauser_map(*inner.value, *endo);
            KResult r;
            r.value = s.dual;
            r.warnings = inner.warnings;
            r.trace = inner.trace;
            r.trace.push_back({"schafhauser-colimit",
                               "colimit along the module endomorphism",
                               "K-theory of circle crossed products of Cuntz-Pimsner "
                               "algebras (Schafhauser)"});
            return r;
        }
        case ExprKind::Induced:
            return unevaluated("induced algebra: evaluate the trivialized form instead");
        case ExprKind::TensorOverBase:
            return unevaluated("balanced tensor products have no K-theory rule here");
    }
    return unevaluated("unhandled expression");
}

} // namespace

KResult k_of_expr(const CstarExpr& e) {
    CstarExpr reduced = calg::simplify(e);
    return k_of_simplified(reduced);
}

} // namespace tdual::ktheory
