#pragma once

#include "tdual/classify.hpp"
#include "tdual/rewrite.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tdual::calg {

enum class DiamondBranch { PurelyInfinite, StablyFinite, TorsionClass };

std::string branch_str(DiamondBranch b);

struct DiamondArrow {
    std::string from;
    std::string to;
    std::string label;
};

// The four-corner duality diagram. `left` is the input algebra, `top` the
// crossed product by the integer action, `right` the dual corner, `bottom`
// the circle quotient. Raw corners keep the unreduced crossed products for
// the involution check.
struct Diamond {
    CstarExpr left, top, right, bottom;
    CstarExpr left_raw, top_raw, right_raw, bottom_raw;
    DiamondBranch branch = DiamondBranch::StablyFinite;
    bool unique_up_to_cocycle_conjugacy = false;
    std::optional<Rat> trace_parameter; // recorded duality parameter, when any
    std::vector<DiamondArrow> arrows;
    std::vector<RewriteStep> trace;
    std::vector<std::string> notes;
    std::optional<ActionDescriptor> z_action, circle_action, r_action;
};

struct DualizeActions {
    std::optional<ActionDescriptor> z_action;
    std::optional<ActionDescriptor> circle_action;
    std::optional<ActionDescriptor> r_action;
};

// Builds the duality diamond for d. Branch dispatch: purely infinite fibers
// go through the unique Rokhlin flow; torsion classes through the fixed-point
// algebra picture; the remaining stably finite fibers through the
// integer-then-circle procedure with its Cuntz-Pimsner description.
Diamond t_dualize(const CstarExpr& d, const DualizeActions& actions);

// Crossed product of the right corner by the recorded dual actions; for a
// genuine duality this simplifies to Stabilize(left).
CstarExpr redualize_right_corner(const Diamond& d);

// Classical dual for fiber C over an explicit product W x S1 with flux in
// Kunneth coordinates. The dual bundle's chern class is the fiber component
// of the flux; the dual flux is pinned whenever the dual bundle is again a
// product and otherwise reported as a constraint set.
struct MRDual {
    topology::Space dual_space;
    topology::CohClass dual_chern;
    std::optional<topology::CohClass> dual_flux;
    std::vector<std::string> constraints;
};
MRDual mathai_rosenberg_dual(const CstarExpr& d);

} // namespace tdual::calg
