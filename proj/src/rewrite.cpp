#include "tdual/rewrite.hpp"

#include "tdual/classify.hpp"
#include "tdual/errors.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>

namespace tdual::calg {

using catalog::AlgebraKind;
using catalog::SSAlgebra;
using catalog::SupernaturalNumber;
using topology::Space;
using topology::SpaceKind;

namespace {

struct Rewritten {
    CstarExpr expr;
    std::string detail;
};

struct Rule {
    std::string name;
    std::string citation;
    std::function<std::optional<Rewritten>(const CstarExpr&)> apply;
};

bool is_fiber(const CstarExpr& e, AlgebraKind kind) {
    return e.kind() == ExprKind::Fiber && e.algebra().kind() == kind;
}

// Cuntz index of a Fiber node (O2 itself counts as index 2); 0 otherwise.
int cuntz_index_of(const CstarExpr& e) {
    if (e.kind() != ExprKind::Fiber) return 0;
    if (e.algebra().kind() == AlgebraKind::Cuntz2) return 2;
    if (e.algebra().kind() == AlgebraKind::CuntzN) return e.algebra().cuntz_index();
    return 0;
}

// Removes one explicit circle factor; nullopt when there is none.
std::optional<Space> space_without_circle(const Space& x) {
    switch (x.kind()) {
        case SpaceKind::Circle:
            return Space::point();
        case SpaceKind::Torus:
            return Space::torus(x.parameter() - 1); // torus(1) canonicalizes to the circle
        case SpaceKind::Product: {
            std::vector<Space> rest;
            bool removed = false;
            for (const Space& f : x.factors()) {
                if (!removed && f.kind() == SpaceKind::Circle) {
                    removed = true;
                    continue;
                }
                rest.push_back(f);
            }
            if (removed) return Space::product(std::move(rest));
            // fall back to shrinking a torus factor
            for (std::size_t i = 0; i < x.factors().size(); ++i) {
                if (x.factors()[i].kind() == SpaceKind::Torus) {
                    std::vector<Space> out = x.factors();
                    out[i] = Space::torus(out[i].parameter() - 1);
                    return Space::product(std::move(out));
                }
            }
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

SupernaturalNumber support_of_trace(const Rat& factor) {
    Int pq = factor.get_num() * factor.get_den();
    if (pq < 2)
        throw ValidationError("trace-scaling: factor 1 carries no supernatural support");
    return SupernaturalNumber::of_integer(pq);
}

int eek_index(const Rat& factor) {
    Int diff = abs(Int(factor.get_num() - factor.get_den()));
    return static_cast<int>(diff.get_si()) + 1;
}

// --- the rule table ------------------------------------------------------------

std::optional<Rewritten> rule_tensor_normalize(const CstarExpr& e) {
    if (e.kind() != ExprKind::Tensor) return std::nullopt;

    std::vector<CstarExpr> flat;
    bool pending_stab = false;
    std::function<void(const CstarExpr&)> flatten = [&](const CstarExpr& n) {
        for (const CstarExpr& c : n.children()) {
            if (c.kind() == ExprKind::Tensor) {
                flatten(c);
            } else if (c.kind() == ExprKind::Stabilize) {
                pending_stab = true;
                if (c.children().front().kind() == ExprKind::Tensor)
                    flatten(c.children().front());
                else
                    flat.push_back(c.children().front());
            } else {
                flat.push_back(c);
            }
        }
    };
    flatten(e);

    // merge C0 factors, drop units
    std::vector<Space> spaces;
    std::vector<CstarExpr> fibers;
    std::vector<CstarExpr> rest;
    for (const CstarExpr& c : flat) {
        if (c.kind() == ExprKind::FunctionsOn) {
            if (c.space().kind() != SpaceKind::Point) spaces.push_back(c.space());
        } else if (c.kind() == ExprKind::Fiber) {
            fibers.push_back(c);
        } else {
            rest.push_back(c);
        }
    }
    // fold catalog fibers through the tensor table; derived constants keep
    // their own factor
    std::vector<CstarExpr> kept_fibers;
    std::optional<CstarExpr> merged;
    for (const CstarExpr& f : fibers) {
        if (f.algebra().is_derived()) {
            kept_fibers.push_back(f);
            continue;
        }
        if (!merged) {
            merged = f;
            continue;
        }
        bool stab = merged->stabilized() || f.stabilized();
        merged = CstarExpr::fiber(catalog::tensor_ssa(merged->algebra(), f.algebra()), stab);
    }
    if (merged) {
        if (merged->algebra().kind() == AlgebraKind::Complex) {
            // the unit; a stabilized unit turns the whole product into (x) K
            if (merged->stabilized()) {
                if (!kept_fibers.empty()) {
                    CstarExpr k = kept_fibers.front();
                    kept_fibers.front() = CstarExpr::fiber(k.algebra(), true);
                } else if (spaces.empty() && rest.empty()) {
                    kept_fibers.push_back(*merged);
                } else {
                    pending_stab = true;
                }
            }
        } else {
            kept_fibers.insert(kept_fibers.begin(), *merged);
        }
    }

    // one stabilization anywhere stabilizes the whole product, so the flag is
    // canonicalized onto every fiber factor
    bool any_stab = pending_stab;
    for (const CstarExpr& f : kept_fibers) any_stab = any_stab || f.stabilized();
    if (any_stab && !kept_fibers.empty()) {
        for (CstarExpr& f : kept_fibers) f = CstarExpr::fiber(f.algebra(), true);
        pending_stab = false;
    }

    std::vector<CstarExpr> out;
    if (!spaces.empty()) out.push_back(CstarExpr::functions_on(Space::product(spaces)));
    for (const CstarExpr& f : kept_fibers) out.push_back(f);
    for (const CstarExpr& r : rest) out.push_back(r);
    std::sort(out.begin(), out.end(),
              [](const CstarExpr& a, const CstarExpr& b) { return a.str() < b.str(); });

    CstarExpr result = CstarExpr::fiber(SSAlgebra::complex(), pending_stab);
    if (out.size() == 1) {
        result = out.front();
        if (pending_stab) result = CstarExpr::stabilize(result);
    } else if (!out.empty()) {
        result = CstarExpr::tensor(std::move(out));
        if (pending_stab) result = CstarExpr::stabilize(result);
    }
    if (result == e) return std::nullopt;
    return Rewritten{result, "tensor product normalized"};
}

std::optional<Rewritten> rule_stabilize_normalize(const CstarExpr& e) {
    if (e.kind() != ExprKind::Stabilize) return std::nullopt;
    const CstarExpr& c = e.children().front();
    switch (c.kind()) {
        case ExprKind::Stabilize:
            return Rewritten{c, "stabilization is idempotent"};
        case ExprKind::Fiber:
            if (c.stabilized()) return Rewritten{c, "stabilization is idempotent"};
            return Rewritten{CstarExpr::fiber(c.algebra(), true), "fiber stabilized"};
        case ExprKind::BundleAlg:
            return Rewritten{c, "section algebras of stabilized fibers are stable"};
        case ExprKind::Tensor: {
            bool has_fiber = false;
            std::vector<CstarExpr> children;
            for (const CstarExpr& x : c.children()) {
                if (x.kind() == ExprKind::Fiber) {
                    has_fiber = true;
                    children.push_back(CstarExpr::fiber(x.algebra(), true));
                } else {
                    children.push_back(x);
                }
            }
            if (!has_fiber) return std::nullopt;
            return Rewritten{CstarExpr::tensor(std::move(children)),
                             "stabilization absorbed into the fiber"};
        }
        default:
            return std::nullopt;
    }
}

std::optional<Rewritten> rule_trivial_class(const CstarExpr& e) {
    if (e.kind() != ExprKind::BundleAlg) return std::nullopt;
    if (!e.char_class().is_trivial()) return std::nullopt;
    CstarExpr rhs = CstarExpr::tensor({CstarExpr::functions_on(e.space()),
                                       CstarExpr::fiber(e.algebra(), true)});
    return Rewritten{rhs, "bundle with trivial class is a trivial bundle"};
}

std::optional<Rewritten> rule_forced_trivial(const CstarExpr& e) {
    if (e.kind() != ExprKind::BundleAlg) return std::nullopt;
    if (e.char_class().is_trivial()) return std::nullopt; // previous rule's job
    if (e.algebra().is_derived()) return std::nullopt;
    try {
        if (!classify_bundles(e.space(), e.algebra()).all_trivial()) return std::nullopt;
    } catch (const UnsupportedError&) {
        return std::nullopt;
    }
    CstarExpr rhs = CstarExpr::tensor({CstarExpr::functions_on(e.space()),
                                       CstarExpr::fiber(e.algebra(), true)});
    return Rewritten{rhs, "classification group is trivial, so the bundle is trivial"};
}

std::optional<Rewritten> rule_eek(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed || e.group() != CrossedGroup::Z) return std::nullopt;
    if (e.action().kind != ActionKind::TraceScaling) return std::nullopt;
    const CstarExpr& c = e.children().front();
    if (!is_fiber(c, AlgebraKind::UHF)) return std::nullopt;
    if (!c.stabilized())
        throw ValidationError("trace-scaling automorphisms scale a trace that is only "
                              "defined on the stabilized algebra " + c.algebra().str() +
                              " (x) K");
    SupernaturalNumber expected = support_of_trace(e.action().factor);
    if (!(c.algebra().supernatural() == expected))
        throw ValidationError("trace-scaling crossed product: fiber " + c.algebra().str() +
                              " does not match the supernatural support of the factor " +
                              to_string(e.action().factor));
    int n = eek_index(e.action().factor);
    return Rewritten{CstarExpr::fiber(SSAlgebra::cuntz(n), true),
                     "trace " + to_string(e.action().factor) + " gives O_" + std::to_string(n) +
                         " (x) K"};
}

std::optional<Rewritten> rule_quasifree(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed || e.group() != CrossedGroup::R) return std::nullopt;
    if (e.action().kind != ActionKind::QuasiFreeO2) return std::nullopt;
    const CstarExpr& c = e.children().front();
    if (!is_fiber(c, AlgebraKind::Cuntz2)) return std::nullopt;
    const ActionDescriptor& a = e.action();
    if (a.irrational) {
        if (a.positive_parameter)
            return Rewritten{CstarExpr::fiber(SSAlgebra::razak_jacelon(), true),
                             "quasi-free flow at positive irrational parameter gives W (x) K"};
        return Rewritten{CstarExpr::fiber(SSAlgebra::cuntz2(), true),
                         "quasi-free flow at negative irrational parameter gives O2 (x) K"};
    }
    if (a.factor <= 0) return std::nullopt;
    Int p = a.factor.get_num();
    Int q = a.factor.get_den();
    return Rewritten{
        CstarExpr::fiber(SSAlgebra::mapping_torus_af(p, q), c.stabilized()),
        "quasi-free flow at rational parameter gives a mapping torus of an AF algebra"};
}

std::optional<Rewritten> rule_takai(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed) return std::nullopt;
    if (e.action().kind != ActionKind::DualOf) return std::nullopt;
    const ActionDescriptor& original = *e.action().inner;
    CstarExpr inner = e.children().front();
    bool through_stab = false;
    if (inner.kind() == ExprKind::Stabilize) {
        inner = inner.children().front();
        through_stab = true;
    }
    if (inner.kind() != ExprKind::Crossed) return std::nullopt;
    if (dual_group(inner.group()) != e.group()) return std::nullopt;
    if (!same_action(inner.action(), original)) return std::nullopt;
    (void)through_stab; // (B (x) K) x| dual collapses the same way
    return Rewritten{CstarExpr::stabilize(inner.children().front()),
                     "double crossed product by the dual action is the stabilization"};
}

// Dual-action collapses on already-reduced crossed products. Each one undoes
// a forward rule through Takai duality, so that inner-first reduction orders
// reach the same normal form as the syntactic double-crossed match.
std::optional<Rewritten> rule_dual_undo(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed) return std::nullopt;
    if (e.action().kind != ActionKind::DualOf) return std::nullopt;
    const ActionDescriptor& orig = *e.action().inner;
    const CstarExpr& c = e.children().front();
    if (!is_bundle_form(c)) return std::nullopt;

    // dual of the trace-scaling automorphism on O_{|p-q|+1} (x) K; the dual
    // action only exists over the crossed product, which is always stable
    if (e.group() == CrossedGroup::S1 && orig.kind == ActionKind::TraceScaling) {
        int idx = cuntz_index_of(c);
        if (idx == 0) return std::nullopt;
        if (idx != eek_index(orig.factor))
            throw ValidationError("dual trace-scaling action applied to O_" +
                                  std::to_string(idx) + " but the factor " +
                                  to_string(orig.factor) + " produces O_" +
                                  std::to_string(eek_index(orig.factor)));
        return Rewritten{
            CstarExpr::fiber(SSAlgebra::uhf(support_of_trace(orig.factor)), true),
            "dual action recovers the stabilized UHF algebra"};
    }

    // dual of a quasi-free flow on its crossed product
    if (e.group() == CrossedGroup::R && orig.kind == ActionKind::QuasiFreeO2 && orig.irrational) {
        bool matches = orig.positive_parameter ? is_fiber(c, AlgebraKind::RazakJacelon)
                                               : is_fiber(c, AlgebraKind::Cuntz2);
        if (!matches) return std::nullopt;
        return Rewritten{CstarExpr::fiber(SSAlgebra::cuntz2(), true),
                         "dual flow recovers O2 (x) K"};
    }

    // dual of the circle translation on the quotient
    if (e.group() == CrossedGroup::Z && orig.kind == ActionKind::TranslationLift) {
        return Rewritten{
            CstarExpr::stabilize(
                CstarExpr::tensor({CstarExpr::functions_on(Space::circle()), c})),
            "dual of the translation restores the circle factor"};
    }

    // dual of the translation flow: the double flow crossed product stabilizes
    if (e.group() == CrossedGroup::R && orig.kind == ActionKind::TranslationLift)
        return Rewritten{CstarExpr::stabilize(c),
                         "dual flow returns the stabilization"};
    return std::nullopt;
}

// A flow lifting the circle translation factors through the circle action, so
// the crossed product keeps the circle factor and stabilizes.
std::optional<Rewritten> rule_translation_flow(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed || e.group() != CrossedGroup::R) return std::nullopt;
    if (e.action().kind != ActionKind::TranslationLift) return std::nullopt;
    const CstarExpr& c = e.children().front().kind() == ExprKind::Stabilize
                             ? e.children().front().children().front()
                             : e.children().front();
    bool has_circle = false;
    if (c.kind() == ExprKind::FunctionsOn) {
        has_circle = space_without_circle(c.space()).has_value();
    } else if (c.kind() == ExprKind::Tensor) {
        for (const CstarExpr& x : c.children())
            if (x.kind() == ExprKind::FunctionsOn &&
                space_without_circle(x.space()).has_value())
                has_circle = true;
    }
    if (!has_circle) return std::nullopt;
    return Rewritten{CstarExpr::stabilize(c),
                     "flow through the free circle action reproduces the algebra "
                     "stabilized"};
}

std::optional<Rewritten> rule_fiberwise_z(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed || e.group() != CrossedGroup::Z) return std::nullopt;
    if (e.action().kind != ActionKind::SpectrumFixing) return std::nullopt;
    if (!e.action().commutes_with_translation) return std::nullopt;
    const CstarExpr& c = e.children().front();
    if (c.kind() != ExprKind::Tensor) return std::nullopt;
    if (rule_tensor_normalize(c)) return std::nullopt; // pull out of normal forms only
    std::vector<CstarExpr> functions;
    std::vector<CstarExpr> rest;
    for (const CstarExpr& x : c.children())
        (x.kind() == ExprKind::FunctionsOn ? functions : rest).push_back(x);
    if (functions.empty() || rest.empty()) return std::nullopt;
    // wait until the residue is a bare fiber: anything else may still surface
    // function factors of its own under further rewriting
    for (const CstarExpr& x : rest)
        if (x.kind() != ExprKind::Fiber) return std::nullopt;
    CstarExpr inner = rest.size() == 1 ? rest.front() : CstarExpr::tensor(rest);
    std::vector<CstarExpr> out = functions;
    // keep the spectrum-fixing wrapper; the bare-fiber unwrap strips it last
    out.push_back(CstarExpr::crossed(inner, CrossedGroup::Z, e.action()));
    return Rewritten{CstarExpr::tensor(std::move(out)),
                     "spectrum-fixing action acts on the fiber of the trivialized bundle"};
}

std::optional<Rewritten> rule_fiberwise_dual_s1(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed || e.group() != CrossedGroup::S1) return std::nullopt;
    if (e.action().kind != ActionKind::DualOf) return std::nullopt;
    const ActionDescriptor& orig = *e.action().inner;
    if (orig.kind != ActionKind::SpectrumFixing) return std::nullopt;
    const CstarExpr& c = e.children().front();
    if (c.kind() != ExprKind::Tensor) return std::nullopt;
    if (rule_tensor_normalize(c)) return std::nullopt; // pull out of normal forms only
    std::vector<CstarExpr> functions;
    std::vector<CstarExpr> rest;
    for (const CstarExpr& x : c.children())
        (x.kind() == ExprKind::FunctionsOn ? functions : rest).push_back(x);
    if (functions.empty() || rest.empty()) return std::nullopt;
    for (const CstarExpr& x : rest)
        if (x.kind() != ExprKind::Fiber) return std::nullopt;
    CstarExpr inner = rest.size() == 1 ? rest.front() : CstarExpr::tensor(rest);
    std::vector<CstarExpr> out = functions;
    out.push_back(CstarExpr::crossed(inner, CrossedGroup::S1, e.action()));
    return Rewritten{CstarExpr::tensor(std::move(out)),
                     "dual of a fiberwise action stays fiberwise"};
}

std::optional<Rewritten> rule_bundle_fiberwise(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed || e.group() != CrossedGroup::Z) return std::nullopt;
    if (e.action().kind != ActionKind::SpectrumFixing) return std::nullopt;
    if (!e.action().commutes_with_translation) return std::nullopt;
    const ActionDescriptor& fiber_action = *e.action().inner;
    if (fiber_action.kind != ActionKind::TraceScaling) return std::nullopt;
    const CstarExpr& c = e.children().front();
    if (c.kind() != ExprKind::BundleAlg) return std::nullopt;
    if (c.algebra().kind() != AlgebraKind::UHF) return std::nullopt;
    SupernaturalNumber expected = support_of_trace(fiber_action.factor);
    if (!(c.algebra().supernatural() == expected))
        throw ValidationError("trace-scaling crossed product: bundle fiber " +
                              c.algebra().str() + " does not match the supernatural support "
                              "of the factor " + to_string(fiber_action.factor));
    int n = eek_index(fiber_action.factor);
    if (n != 2) return std::nullopt; // only the O2 case is forced trivial a priori
    try {
        if (!classify_bundles(c.space(), SSAlgebra::cuntz2()).all_trivial())
            return std::nullopt;
    } catch (const UnsupportedError&) {
        return std::nullopt;
    }
    CstarExpr rhs = CstarExpr::tensor({CstarExpr::functions_on(c.space()),
                                       CstarExpr::fiber(SSAlgebra::cuntz2(), true)});
    return Rewritten{rhs, "fiberwise trace-scaling turns the bundle into the forced-trivial "
                          "O2 bundle"};
}

std::optional<Rewritten> rule_translation_quotient(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed || e.group() != CrossedGroup::S1) return std::nullopt;
    if (e.action().kind != ActionKind::TranslationLift) return std::nullopt;
    // the result stabilizes anyway, so a stabilization wrapper is transparent
    const CstarExpr& c = e.children().front().kind() == ExprKind::Stabilize
                             ? e.children().front().children().front()
                             : e.children().front();
    const CstarExpr* functions = nullptr;
    std::vector<CstarExpr> rest;
    if (c.kind() == ExprKind::FunctionsOn) {
        functions = &c;
    } else if (c.kind() == ExprKind::Tensor) {
        for (const CstarExpr& x : c.children()) {
            if (x.kind() == ExprKind::FunctionsOn && !functions)
                functions = &x;
            else
                rest.push_back(x);
        }
    }
    if (!functions) return std::nullopt;
    std::optional<Space> reduced = space_without_circle(functions->space());
    if (!reduced) return std::nullopt;
    std::vector<CstarExpr> out;
    if (reduced->kind() != SpaceKind::Point)
        out.push_back(CstarExpr::functions_on(*reduced));
    for (const CstarExpr& r : rest) out.push_back(r);
    CstarExpr inner = out.empty() ? CstarExpr::fiber(SSAlgebra::complex(), false)
                     : out.size() == 1 ? out.front()
                                       : CstarExpr::tensor(std::move(out));
    return Rewritten{CstarExpr::stabilize(inner),
                     "translation crossed product collapses the circle factor to K"};
}

// Functions on a point are the unit of the tensor product.
std::optional<Rewritten> rule_functions_point(const CstarExpr& e) {
    if (e.kind() != ExprKind::FunctionsOn) return std::nullopt;
    if (e.space().kind() != SpaceKind::Point) return std::nullopt;
    return Rewritten{CstarExpr::fiber(SSAlgebra::complex(), false),
                     "functions on a point are the complex numbers"};
}

// Over a bare fiber the spectrum is a point, so a spectrum-fixing wrapper
// carries no content beyond its inner fiber action.
std::optional<Rewritten> rule_spectrum_fixing_unwrap(const CstarExpr& e) {
    if (e.kind() != ExprKind::Crossed) return std::nullopt;
    if (e.children().front().kind() != ExprKind::Fiber) return std::nullopt;
    const ActionDescriptor& a = e.action();
    if (a.kind == ActionKind::SpectrumFixing)
        return Rewritten{CstarExpr::crossed(e.children().front(), e.group(), *a.inner),
                         "spectrum-fixing over a point is the fiber action"};
    if (a.kind == ActionKind::DualOf && a.inner->kind == ActionKind::SpectrumFixing)
        return Rewritten{
            CstarExpr::crossed(e.children().front(), e.group(),
                               ActionDescriptor::dual_of(*a.inner->inner)),
            "spectrum-fixing over a point is the fiber action"};
    return std::nullopt;
}

std::optional<Rewritten> rule_pimsner(const CstarExpr& e) {
    if (e.kind() != ExprKind::CuntzPimsner) return std::nullopt;
    const ModuleTag& m = e.module_tag();
    if (!m.twist) return std::nullopt;
    return Rewritten{CstarExpr::crossed(e.children().front(), CrossedGroup::Z, *m.twist),
                     "the module twisted by an automorphism presents the crossed product"};
}

const std::vector<Rule>& rules() {
    static const std::vector<Rule> table = {
        {"tensor-normalize", "absorption table for strongly self-absorbing algebras",
         rule_tensor_normalize},
        {"stabilize-normalize", "A (x) K (x) K = A (x) K", rule_stabilize_normalize},
        {"trivial-class-bundle", "Dadarlat-Pennig classification of A (x) K bundles",
         rule_trivial_class},
        {"forced-trivial-bundle", "Dadarlat-Pennig classification of A (x) K bundles",
         rule_forced_trivial},
        {"trace-scaling-crossed", "Elliott-Evans-Kishimoto: trace-scaling automorphisms of "
                                  "stabilized UHF algebras",
         rule_eek},
        {"quasifree-flow", "quasi-free flows on O2 (Kishimoto, Dean, Jacelon)",
         rule_quasifree},
        {"takai", "Takai duality", rule_takai},
        {"takai-reduced", "Takai duality", rule_dual_undo},
        {"fiberwise-z-action", "spectrum-fixing actions restrict to the fiber",
         rule_fiberwise_z},
        {"fiberwise-dual-s1", "dual actions of fiberwise actions are fiberwise",
         rule_fiberwise_dual_s1},
        {"bundle-fiberwise-trace", "Elliott-Evans-Kishimoto with Dadarlat-Pennig forcing",
         rule_bundle_fiberwise},
        {"translation-quotient", "Green imprimitivity: C(S1) x| S1 = K",
         rule_translation_quotient},
        {"translation-flow", "Green imprimitivity for flows through the circle",
         rule_translation_flow},
        {"functions-point-unit", "C0(pt) = C", rule_functions_point},
        {"spectrum-fixing-unwrap", "a point spectrum leaves only the fiber action",
         rule_spectrum_fixing_unwrap},
        {"pimsner-module", "Pimsner: crossed products by Z are Cuntz-Pimsner algebras",
         rule_pimsner},
    };
    return table;
}

// --- the engine ---------------------------------------------------------------------

struct Redex {
    std::vector<std::size_t> path;
    std::size_t rule_index;
};

CstarExpr subexpr_at(const CstarExpr& e, const std::vector<std::size_t>& path,
                     std::size_t depth = 0) {
    if (depth == path.size()) return e;
    return subexpr_at(e.children().at(path[depth]), path, depth + 1);
}

CstarExpr replace_at(const CstarExpr& e, const std::vector<std::size_t>& path,
                     const CstarExpr& replacement, std::size_t depth = 0) {
    if (depth == path.size()) return replacement;
    std::vector<CstarExpr> children = e.children();
    children.at(path[depth]) =
        replace_at(children[path[depth]], path, replacement, depth + 1);
    return e.with_children(std::move(children));
}

void collect_redexes(const CstarExpr& e, std::vector<std::size_t>& path,
                     std::vector<Redex>& out) {
    // children first: innermost-first is the deterministic strategy
    for (std::size_t i = 0; i < e.children().size(); ++i) {
        path.push_back(i);
        collect_redexes(e.children()[i], path, out);
        path.pop_back();
    }
    const auto& table = rules();
    for (std::size_t r = 0; r < table.size(); ++r)
        if (table[r].apply(e)) out.push_back({path, r});
}

SimplifyResult run(const CstarExpr& input, std::mt19937_64* rng) {
    constexpr std::size_t kMaxSteps = 10000;
    SimplifyResult result{input, {}};
    for (std::size_t step = 0;; ++step) {
        if (step > kMaxSteps)
            throw InternalError("simplify: rewrite did not terminate within " +
                                std::to_string(kMaxSteps) + " steps");
        std::vector<Redex> redexes;
        std::vector<std::size_t> path;
        collect_redexes(result.expr, path, redexes);
        if (redexes.empty()) return result;
        const Redex& pick =
            rng ? redexes[(*rng)() % redexes.size()] : redexes.front();
        const Rule& rule = rules()[pick.rule_index];
        CstarExpr sub = subexpr_at(result.expr, pick.path);
        std::optional<Rewritten> rw = rule.apply(sub);
        if (!rw) throw InternalError("simplify: redex vanished between scan and apply");
        result.trace.push_back({rule.name, sub.str(), rw->expr.str(), rule.citation});
        result.expr = replace_at(result.expr, pick.path, rw->expr);
    }
}

} // namespace

SimplifyResult simplify_traced(const CstarExpr& e) { return run(e, nullptr); }

CstarExpr simplify(const CstarExpr& e) { return run(e, nullptr).expr; }

SimplifyResult simplify_randomized(const CstarExpr& e, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return run(e, &rng);
}

} // namespace tdual::calg
