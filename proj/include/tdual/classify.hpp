#pragma once

#include "tdual/expr.hpp"
#include "tdual/topology.hpp"

#include <string>
#include <vector>

namespace tdual::calg {

// Classification group of locally trivial bundles with stabilized fiber `a`
// over x, one factor per degree. For fiber C the group is H^3(X, Z); for the
// other catalog fibers it is H^1(X, K0(a)^x_+) x prod H^{2k+1}(X, K0(a)).
// Trivial factors are kept and reported as trivial.
struct ClassifyResult {
    std::vector<std::pair<int, abgroup::SLocalGroup>> factors; // ascending degree
    std::vector<std::string> warnings;

    const abgroup::SLocalGroup* factor(int degree) const;
    bool all_trivial() const;
};

ClassifyResult classify_bundles(const topology::Space& x, const catalog::SSAlgebra& a);

// Torsion test for a bundle's characteristic class: every degree >= 3
// component has finite order and the degree-1 component vanishes.
struct TorsionClassResult {
    bool value = false;
    std::string rationale;
};
TorsionClassResult is_torsion_class(const CstarExpr& bundle);

// Primitive-ideal space of the expression; rewrites are applied first and a
// noncommutative marker is returned when no rule produces a bundle form.
topology::Space prim(const CstarExpr& e);

// --- action validation -------------------------------------------------------

enum class Severity { Error, Warning, Note };

struct Diagnostic {
    Severity severity = Severity::Note;
    std::string message;
    std::string citation;
};

struct Diagnostics {
    std::vector<Diagnostic> items;

    bool ok() const;
    void add(Severity s, std::string message, std::string citation = "");
};

// Regularity constraints for a proposed action of `group` on e.
// A vanishing Rokhlin dimension on an integer action needs a fiber that
// absorbs a UHF algebra of infinite type or is purely infinite; dimension
// <= 1 is always available. Rokhlin flows on purely infinite fibers are
// unique up to cocycle conjugacy and the diagnostics say so.
Diagnostics validate_action(const CstarExpr& e, CrossedGroup group,
                            const ActionDescriptor& action);

} // namespace tdual::calg
