#include "tdual/diamond.hpp"

#include "tdual/errors.hpp"


namespace tdual::calg {

using abgroup::SLocalGroup;
using catalog::AlgebraKind;
using catalog::SSAlgebra;
using topology::CohClass;
using topology::Space;
using topology::SpaceKind;

std::string branch_str(DiamondBranch b) {
    switch (b) {
        case DiamondBranch::PurelyInfinite: return "PurelyInfinite";
        case DiamondBranch::StablyFinite: return "StablyFinite";
        case DiamondBranch::TorsionClass: return "TorsionClass";
    }
    return "?";
}

namespace {

void require_valid(const CstarExpr& e, CrossedGroup g, const ActionDescriptor& a,
                   Diamond& diamond) {
    Diagnostics diag = validate_action(e, g, a);
    for (const Diagnostic& item : diag.items) {
        if (item.severity == Severity::Error)
            throw ValidationError("t_dualize: " + item.message +
                                  (item.citation.empty() ? "" : " [" + item.citation + "]"));
        diamond.notes.push_back(item.message);
    }
}

void append_trace(Diamond& d, const SimplifyResult& r) {
    d.trace.insert(d.trace.end(), r.trace.begin(), r.trace.end());
}

std::optional<Rat> trace_parameter_of(const ActionDescriptor& a) {
    const ActionDescriptor& core = a.kind == ActionKind::SpectrumFixing ? *a.inner : a;
    if (core.kind == ActionKind::TraceScaling) return core.factor;
    return std::nullopt;
}

} // namespace

Diamond t_dualize(const CstarExpr& d, const DualizeActions& actions) {
    Space spectrum = prim(d);
    if (!spectrum.is_commutative() || !spectrum.has_circle_action())
        throw ValidationError("t_dualize: the primitive spectrum " + spectrum.str() +
                              " carries no visible free circle action");

    Diamond out;
    out.left_raw = d;
    SimplifyResult left = simplify_traced(d);
    out.left = left.expr;
    append_trace(out, left);

    SSAlgebra fiber = fiber_algebra(d);
    bool torsion_branch = false;
    if (d.kind() == ExprKind::BundleAlg && !catalog::is_purely_infinite(fiber)) {
        TorsionClassResult t = is_torsion_class(d);
        if (t.value && !d.char_class().is_trivial()) {
            torsion_branch = true;
            out.notes.push_back("torsion class: " + t.rationale);
        }
    }

    if (catalog::is_purely_infinite(fiber)) {
        out.branch = DiamondBranch::PurelyInfinite;
        if (!actions.r_action)
            throw ValidationError("t_dualize: a purely infinite fiber needs a Rokhlin flow "
                                  "lifting the circle action");
        out.r_action = actions.r_action;
        require_valid(d, CrossedGroup::R, *actions.r_action, out);
        out.unique_up_to_cocycle_conjugacy =
            actions.r_action->rokhlin_dimension == RokhlinDimension::Zero;
        if (out.unique_up_to_cocycle_conjugacy)
            out.notes.push_back("dual corner unique up to cocycle conjugacy");

        out.right_raw = CstarExpr::crossed(d, CrossedGroup::R, *actions.r_action);
        SimplifyResult right = simplify_traced(out.right_raw);
        out.right = right.expr;
        append_trace(out, right);

        ActionDescriptor z = actions.z_action ? *actions.z_action : *actions.r_action;
        if (!actions.z_action)
            out.notes.push_back("integer action taken as the restriction of the flow");
        ActionDescriptor circle =
            actions.circle_action ? *actions.circle_action : ActionDescriptor::translation();
        out.z_action = z;
        out.circle_action = circle;
        out.top_raw = CstarExpr::crossed(d, CrossedGroup::Z, z);
        out.bottom_raw = CstarExpr::crossed(d, CrossedGroup::S1, circle);
        SimplifyResult top = simplify_traced(out.top_raw);
        SimplifyResult bottom = simplify_traced(out.bottom_raw);
        out.top = top.expr;
        out.bottom = bottom.expr;
        append_trace(out, top);
        append_trace(out, bottom);

        // When the integer-then-circle data is supplied too, both routes must
        // land on the same algebra.
        if (actions.z_action && actions.circle_action) {
            CstarExpr alt = simplify(CstarExpr::crossed(out.top_raw, CrossedGroup::S1, circle));
            if (is_bundle_form(alt) && is_bundle_form(out.right)) {
                if (!(alt == out.right))
                    throw InternalError("t_dualize: the Rokhlin flow and the "
                                        "integer-then-circle procedure disagree: " +
                                        alt.str() + " vs " + out.right.str());
                out.notes.push_back(
                    "flow route and integer-then-circle route agree on the dual corner");
            }
        }
    } else if (torsion_branch) {
        out.branch = DiamondBranch::TorsionClass;
        if (!actions.z_action || !actions.circle_action)
            throw ValidationError("t_dualize: the torsion-class branch needs an integer "
                                  "action and a circle action");
        out.z_action = actions.z_action;
        out.circle_action = actions.circle_action;
        require_valid(d, CrossedGroup::Z, *actions.z_action, out);

        out.top_raw = CstarExpr::crossed(d, CrossedGroup::Z, *actions.z_action);
        out.bottom_raw = CstarExpr::crossed(d, CrossedGroup::S1, *actions.circle_action);
        // B = fixed-point algebra corner; theta and theta# are the commuting
        // integer actions it carries, swapped by the duality.
        out.right_raw = CstarExpr::crossed(out.bottom_raw, CrossedGroup::Z,
                                           ActionDescriptor::dual_of(*actions.z_action));
        SimplifyResult top = simplify_traced(out.top_raw);
        SimplifyResult bottom = simplify_traced(out.bottom_raw);
        SimplifyResult right = simplify_traced(out.right_raw);
        out.top = top.expr;
        out.bottom = bottom.expr;
        out.right = right.expr;
        append_trace(out, top);
        append_trace(out, bottom);
        append_trace(out, right);
        out.notes.push_back("K-theory relation: K0 and K1 of the left and right corners are "
                            "both the direct sum of K0 and K1 of the fixed-point corner");
        out.trace_parameter = trace_parameter_of(*actions.z_action);
    } else {
        out.branch = DiamondBranch::StablyFinite;
        if (!actions.z_action || !actions.circle_action)
            throw ValidationError("t_dualize: the stably finite branch needs a "
                                  "spectrum-fixing integer action and a circle action");
        out.z_action = actions.z_action;
        out.circle_action = actions.circle_action;
        require_valid(d, CrossedGroup::Z, *actions.z_action, out);
        out.trace_parameter = trace_parameter_of(*actions.z_action);
        if (out.trace_parameter)
            out.notes.push_back("duality parameter: trace-scaling factor " +
                                to_string(*out.trace_parameter) +
                                "; the dual is pinned by this parameter and "
                                "trace-independence is not asserted");

        out.top_raw = CstarExpr::crossed(d, CrossedGroup::Z, *actions.z_action);
        out.bottom_raw = CstarExpr::crossed(d, CrossedGroup::S1, *actions.circle_action);
        out.right_raw = CstarExpr::crossed(out.top_raw, CrossedGroup::S1, *actions.circle_action);

        SimplifyResult top = simplify_traced(out.top_raw);
        SimplifyResult bottom = simplify_traced(out.bottom_raw);
        out.top = top.expr;
        out.bottom = bottom.expr;
        append_trace(out, top);
        append_trace(out, bottom);
        out.notes.push_back("correspondence corner is the Cuntz-Pimsner algebra of the "
                            "module twisted by the integer action (Pimsner)");

        // Route 1: quotient the correspondence algebra by the lifted circle
        // action. Route 2: the Hao-Ng identification through the bottom corner.
        SimplifyResult route1 = simplify_traced(out.right_raw);
        ModuleTag module =
            actions.z_action->kind == ActionKind::SpectrumFixing
                ? ModuleTag::twist_by(*actions.z_action->inner)
                : ModuleTag::opaque_tag("module crossed by the circle action");
        CstarExpr route2_raw = CstarExpr::cuntz_pimsner(out.bottom_raw, module);
        SimplifyResult route2 = simplify_traced(route2_raw);
        out.notes.push_back("dual corner computed both as the circle quotient of the "
                            "correspondence algebra and through the Hao-Ng identification");

        bool r1 = is_bundle_form(route1.expr);
        bool r2 = is_bundle_form(route2.expr);
        if (r1 && r2 && !(route1.expr == route2.expr))
            throw InternalError("t_dualize: Hao-Ng route disagrees with the quotient route: " +
                                route1.expr.str() + " vs " + route2.expr.str());
        if (r1 || !r2) {
            out.right = route1.expr;
            append_trace(out, route1);
        } else {
            out.right = route2.expr;
            append_trace(out, route2);
        }
    }

    if (out.branch == DiamondBranch::TorsionClass) {
        // the duality reduces to the two commuting integer actions theta and
        // theta# on the fixed-point corner B^alpha and swaps them
        out.arrows = {
            {"top", "left", "restrict along Z (" +
                                (out.z_action ? out.z_action->str() : "-") + ")"},
            {"top", "right", "dual corner"},
            {"left", "bottom", "left = B^alpha x| Z via theta (bottom is the fixed-point "
                               "corner B^alpha)"},
            {"right", "bottom", "right = B^alpha x| Z via theta# (the duality swaps theta "
                                "and theta#)"},
        };
    } else {
        out.arrows = {
            {"top", "left", "restrict along Z (" +
                                (out.z_action ? out.z_action->str() : "-") + ")"},
            {"top", "right", out.branch == DiamondBranch::StablyFinite
                                 ? "circle quotient (Hao-Ng)"
                                 : "dual corner"},
            {"left", "bottom", "circle quotient (" +
                                   (out.circle_action ? out.circle_action->str() : "-") + ")"},
            {"right", "bottom", "dual circle quotient"},
        };
    }
    return out;
}

CstarExpr redualize_right_corner(const Diamond& d) {
    switch (d.branch) {
        case DiamondBranch::PurelyInfinite: {
            if (!d.r_action) throw ValidationError("redualize: no flow recorded");
            return simplify(CstarExpr::crossed(d.right_raw, CrossedGroup::R,
                                               ActionDescriptor::dual_of(*d.r_action)));
        }
        case DiamondBranch::StablyFinite: {
            if (!d.z_action || !d.circle_action)
                throw ValidationError("redualize: recorded actions incomplete");
            CstarExpr undo_circle = CstarExpr::crossed(
                d.right_raw, CrossedGroup::Z, ActionDescriptor::dual_of(*d.circle_action));
            CstarExpr undo_z = CstarExpr::crossed(undo_circle, CrossedGroup::S1,
                                                  ActionDescriptor::dual_of(*d.z_action));
            return simplify(undo_z);
        }
        case DiamondBranch::TorsionClass:
            throw UnsupportedError("redualize: torsion-class corners stay symbolic");
    }
    throw InternalError("redualize: unhandled branch");
}

MRDual mathai_rosenberg_dual(const CstarExpr& d) {
    if (d.kind() != ExprKind::BundleAlg ||
        d.algebra().kind() != AlgebraKind::Complex)
        throw ValidationError("mathai_rosenberg_dual: expected a continuous-trace bundle "
                              "(fiber C)");
    const Space& x = d.space();
    if (x.kind() == SpaceKind::CircleBundle)
        throw UnsupportedError("mathai_rosenberg_dual: nontrivial input bundles are not "
                               "supported");
    Space w = Space::point();
    if (x.kind() == SpaceKind::Circle) {
        w = Space::point();
    } else if (x.kind() == SpaceKind::Torus) {
        w = Space::torus(x.parameter() - 1);
    } else if (x.kind() == SpaceKind::Product) {
        std::vector<Space> rest;
        bool removed = false;
        for (const Space& f : x.factors()) {
            if (!removed && f.kind() == SpaceKind::Circle) {
                removed = true;
                continue;
            }
            rest.push_back(f);
        }
        if (!removed)
            throw UnsupportedError("mathai_rosenberg_dual: the space " + x.str() +
                                   " has no explicit circle factor");
        w = Space::product(std::move(rest));
    } else {
        throw UnsupportedError("mathai_rosenberg_dual: the space " + x.str() +
                               " is not an explicit product with a circle");
    }

    SLocalGroup integers = SLocalGroup::free(1);
    topology::CircleKunnethBlocks blocks = topology::circle_kunneth_blocks(w, 3, integers);
    CohClass flux = CohClass::zero(3, blocks.total());
    if (const CohClass* given = d.char_class().component(3)) {
        if (!(given->group == flux.group))
            throw ValidationError("mathai_rosenberg_dual: flux class lives in " +
                                  given->group.str() + " but H^3 of the product is " +
                                  flux.group.str());
        flux = *given;
    }

    MRDual out;
    out.dual_chern = topology::gysin_pushforward(w, flux, integers);
    if (out.dual_chern.is_zero()) {
        out.dual_space = Space::product({w, Space::circle()});
        // dual flux: base component unchanged, fiber component forced to the
        // (trivial) chern class of the input bundle
        CohClass dual_flux = CohClass::zero(3, flux.group);
        for (std::size_t i = 0; i < blocks.top.generator_count(); ++i)
            dual_flux.components[i] = flux.components[i];
        out.dual_flux = dual_flux;
    } else {
        out.dual_space = Space::circle_bundle(w, out.dual_chern);
        out.constraints.push_back(
            "dual flux pushes forward to the chern class of the input bundle, which is 0");
        out.constraints.push_back(
            "cohomology of the nontrivial dual bundle is outside the product model; the "
            "dual flux is reported as this constraint set");
    }
    return out;
}

} // namespace tdual::calg
