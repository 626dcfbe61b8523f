#include "tdual/classify.hpp"

#include "tdual/errors.hpp"
#include "tdual/rewrite.hpp"

#include <algorithm>
#include <sstream>

namespace tdual::calg {

using abgroup::SLocalGroup;
using catalog::AlgebraKind;
using catalog::SSAlgebra;
using topology::Space;
using topology::SpaceKind;

const SLocalGroup* ClassifyResult::factor(int degree) const {
    for (const auto& [d, g] : factors)
        if (d == degree) return &g;
    return nullptr;
}

bool ClassifyResult::all_trivial() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const auto& f) { return f.second.is_trivial(); });
}

ClassifyResult classify_bundles(const Space& x, const SSAlgebra& a) {
    if (a.is_derived())
        throw ValidationError("classify_bundles: " + a.str() +
                              " is a rewrite output, not a classifiable fiber");
    int dim = x.dimension();
    if (dim < 0)
        throw UnsupportedError("classify_bundles: no cohomology model for " + x.str());

    ClassifyResult result;
    if (a.kind() == AlgebraKind::Complex) {
        result.factors.emplace_back(3, topology::cohomology(x, 3, SLocalGroup::free(1)));
        return result;
    }

    catalog::UnitsGroup units = catalog::units_positive(a);
    if (units.symbolic_infinite)
        throw UnsupportedError("classify_bundles: the positive-unit group of " + a.str() +
                               " is free abelian on every prime and cannot serve as a "
                               "cohomology coefficient group");
    result.warnings = units.assumption_notes;
    result.factors.emplace_back(1, topology::cohomology(x, 1, units.group));

    SLocalGroup k0 = catalog::k_theory_ssa(a)->k0;
    for (int deg = 3; deg <= dim; deg += 2)
        result.factors.emplace_back(deg, topology::cohomology(x, deg, k0));

    if ((a.kind() == AlgebraKind::UHF || a.kind() == AlgebraKind::UHFtensorOinf) &&
        x.kind() == SpaceKind::Torus && dim >= 3) {
        result.warnings.push_back(
            "discrepancy note: degree >= 3 torus factors are computed with coefficients in "
            "K0 of the fiber (integers with the supernatural support inverted); an "
            "integral-coefficient convention for UHF-fiber bundles over tori also "
            "circulates and gives different groups");
    }
    return result;
}

TorsionClassResult is_torsion_class(const CstarExpr& bundle) {
    if (bundle.kind() != ExprKind::BundleAlg)
        throw ValidationError("is_torsion_class: expected a bundle algebra");
    const CharClass& cls = bundle.char_class();
    std::ostringstream why;
    bool value = true;
    for (const auto& c : cls.entries) {
        if (c.degree == 1) {
            if (!c.is_zero()) {
                value = false;
                why << "degree-1 component is nonzero; ";
            }
        } else if (c.degree >= 3 && !c.is_torsion()) {
            value = false;
            why << "degree-" << c.degree << " component has infinite order; ";
        }
    }
    TorsionClassResult out;
    out.value = value;
    out.rationale = value ? "every component of degree >= 3 has finite order and the "
                            "degree-1 component vanishes"
                          : why.str();
    return out;
}

namespace {

Space prim_structural(const CstarExpr& e) {
    switch (e.kind()) {
        case ExprKind::BundleAlg: return e.space();
        case ExprKind::Fiber: return Space::point();
        case ExprKind::FunctionsOn: return e.space();
        case ExprKind::Stabilize: return prim_structural(e.children().front());
        case ExprKind::Tensor: {
            std::vector<Space> factors;
            for (const CstarExpr& c : e.children()) {
                Space s = prim_structural(c);
                if (!s.is_commutative())
                    return Space::nc_space(e.str());
                factors.push_back(std::move(s));
            }
            return Space::product(std::move(factors));
        }
        case ExprKind::TensorOverBase: {
            const auto& cs = e.children();
            Space acc = prim_structural(cs.front());
            for (std::size_t i = 1; i < cs.size(); ++i)
                acc = Space::fiber_product(acc, prim_structural(cs[i]), e.space());
            return acc;
        }
        case ExprKind::Induced:
            // Ind_Z^R turns the fiber's spectrum into a circle worth of copies
            return Space::product({prim_structural(e.children().front()), Space::circle()});
        case ExprKind::Crossed:
        case ExprKind::CuntzPimsner:
            return Space::nc_space(e.str());
    }
    return Space::nc_space(e.str());
}

} // namespace

Space prim(const CstarExpr& e) { return prim_structural(simplify(e)); }

// --- action validation -----------------------------------------------------------

bool Diagnostics::ok() const {
    return std::none_of(items.begin(), items.end(),
                        [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void Diagnostics::add(Severity s, std::string message, std::string citation) {
    items.push_back({s, std::move(message), std::move(citation)});
}

Diagnostics validate_action(const CstarExpr& e, CrossedGroup group,
                            const ActionDescriptor& action) {
    Diagnostics d;
    SSAlgebra fiber = fiber_algebra(e);
    const ActionDescriptor& core =
        action.kind == ActionKind::SpectrumFixing ? *action.inner : action;

    if (core.kind == ActionKind::TraceScaling) {
        if (fiber.kind() == AlgebraKind::UHF) {
            Int pq = core.factor.get_num() * core.factor.get_den();
            if (pq < 2) {
                d.add(Severity::Error, "trace-scaling factor 1 is not outer",
                      "Elliott-Evans-Kishimoto classification needs s != 1");
            } else if (!(catalog::SupernaturalNumber::of_integer(pq) == fiber.supernatural())) {
                d.add(Severity::Error,
                      "trace-scaling factor " + to_string(core.factor) +
                          " does not match the supernatural support of " + fiber.str(),
                      "Elliott-Evans-Kishimoto: trace-scaling automorphisms of "
                      "stabilized UHF algebras");
            }
        } else if (fiber.kind() != AlgebraKind::RazakJacelon) {
            d.add(Severity::Error,
                  "trace-scaling actions need a UHF (or W) fiber, not " + fiber.str(),
                  "trace-scaling factors live on stabilized UHF algebras");
        }
    }

    if (core.kind == ActionKind::QuasiFreeO2 && fiber.kind() != AlgebraKind::Cuntz2)
        d.add(Severity::Error, "quasi-free flows are defined on O2, not " + fiber.str(), "");
    if (core.kind == ActionKind::QuasiFreeO2 && !core.irrational &&
        action.rokhlin_dimension == RokhlinDimension::Zero)
        d.add(Severity::Error,
              "a quasi-free flow at rational parameter is never Rokhlin",
              "Rokhlin quasi-free flows have irrational parameter");

    switch (group) {
        case CrossedGroup::Z:
        case CrossedGroup::Zn:
            if (action.rokhlin_dimension == RokhlinDimension::Zero &&
                !catalog::absorbs_uhf_of_infinite_type(fiber) &&
                !catalog::is_purely_infinite(fiber)) {
                d.add(Severity::Error,
                      "integer actions of Rokhlin dimension 0 on a " + fiber.str() +
                          " fiber are not available; only dimension <= 1 is generic",
                      "genericity of Rokhlin dimension <= 1 for integer actions "
                      "(Szabo-Wu-Zacharias); dimension 0 needs a UHF-absorbing fiber");
            } else if (action.rokhlin_dimension == RokhlinDimension::Zero) {
                d.add(Severity::Note,
                      "Rokhlin integer actions are generic on " + fiber.str() + " fibers",
                      "UHF-absorbing fibers admit generic Rokhlin automorphisms");
            } else {
                d.add(Severity::Note,
                      "integer actions of Rokhlin dimension <= 1 are generic",
                      "genericity of finite Rokhlin dimension (Szabo-Wu-Zacharias)");
            }
            break;
        case CrossedGroup::R:
            if (catalog::is_purely_infinite(fiber) &&
                action.rokhlin_dimension == RokhlinDimension::Zero) {
                d.add(Severity::Note,
                      "Rokhlin flow on a purely infinite fiber: the lift is unique up to "
                      "cocycle conjugacy",
                      "uniqueness of Rokhlin flows on O_inf-absorbing algebras (Szabo)");
            } else if (!catalog::is_purely_infinite(fiber)) {
                d.add(Severity::Warning,
                      "flows on stably finite fibers carry no uniqueness guarantee; the "
                      "integer-then-circle procedure pins the dual down instead",
                      "");
            }
            break;
        case CrossedGroup::S1:
            break;
    }
    return d;
}

} // namespace tdual::calg
