#pragma once

#include "tdual/diamond.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tdual::ktheory {

using catalog::KPair;

struct KStep {
    std::string rule;
    std::string detail;
    std::string citation;
};

// Either an exact (K0, K1) pair or an explicit reason the engine declines to
// evaluate (opaque node, extension ambiguity, ...). Warnings carry the
// discrepancy notes that must never be resolved silently.
struct KResult {
    std::optional<KPair> value;
    std::string unevaluated_reason;
    std::vector<KStep> trace;
    std::vector<std::string> warnings;

    bool evaluated() const { return value.has_value(); }
    std::string str() const;
};

// Endomorphism of a KPair, one group map per degree.
struct KEndomorphism {
    abgroup::GroupMap on_k0;
    abgroup::GroupMap on_k1;

    static KEndomorphism identity(const KPair& k);
    static KEndomorphism scalar(const KPair& k, const Int& num, const Int& den = 1);
    void validate(const KPair& k) const;
};

// Topological K-theory of the named catalog: K0 = even cohomology, K1 = odd
// for the torsion-free spaces, RP2 as a stored constant, products through the
// C*-Kunneth formula.
KResult k_of_space(const topology::Space& x);

// Z/2-graded Kunneth formula. Exact when every Tor term vanishes; otherwise
// the extension is ambiguous and the result is declined.
KResult kunneth_c(const KResult& a, const KResult& b);

KPair connes_thom(const KPair& k);

// Six-term sequence for integer crossed products: in each degree the result
// is an extension of ker(1 - e) (next degree) by coker(1 - e); it is returned
// when the kernel part is free and declined with the constraints otherwise.
KResult pimsner_voiculescu(const KPair& k, const KEndomorphism& e);

// K-theory of the circle crossed product of the Cuntz-Pimsner algebra of a
// module inducing h: the colimit along h, with the canonical first-stage map.
struct SchafhauserResult {
    KPair dual;
    abgroup::GroupMap phi0;
    abgroup::GroupMap phi1;
};
SchafhauserResult schafhauser_map(const KPair& k, const KEndomorphism& h);

// K-theory of both torsion-branch corners from the fixed-point corner:
// (G, G) with G = K0 (+) K1.
KPair torsion_diamond_k(const KPair& fixed_point);

// Structural K-theory of a symbolic expression (the expression is simplified
// first). Opaque corners come back unevaluated, never guessed.
KResult k_of_expr(const calg::CstarExpr& e);

} // namespace tdual::ktheory
