#include "tdual/expr.hpp"

#include "tdual/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tdual::calg {

using catalog::SSAlgebra;
using topology::Space;

// --- ActionDescriptor -----------------------------------------------------------

ActionDescriptor ActionDescriptor::trace_scaling(const Rat& factor) {
    if (factor <= 0) throw ValidationError("trace-scaling factor must be positive");
    ActionDescriptor a;
    a.kind = ActionKind::TraceScaling;
    a.factor = factor;
    a.factor.canonicalize();
    // Trace-scaling automorphisms of stabilized UHF algebras are Rokhlin.
    a.rokhlin_dimension = RokhlinDimension::Zero;
    return a;
}

ActionDescriptor ActionDescriptor::quasifree_irrational(bool positive) {
    ActionDescriptor a;
    a.kind = ActionKind::QuasiFreeO2;
    a.irrational = true;
    a.positive_parameter = positive;
    a.rokhlin_dimension = RokhlinDimension::Zero; // Rokhlin exactly when irrational
    return a;
}

ActionDescriptor ActionDescriptor::quasifree_rational(const Rat& lambda) {
    if (lambda == 0) throw ValidationError("quasi-free parameter must be nonzero");
    ActionDescriptor a;
    a.kind = ActionKind::QuasiFreeO2;
    a.irrational = false;
    a.factor = lambda;
    a.factor.canonicalize();
    a.positive_parameter = lambda > 0;
    a.rokhlin_dimension = RokhlinDimension::Unknown; // never Rokhlin at rational parameter
    return a;
}

ActionDescriptor ActionDescriptor::translation() {
    ActionDescriptor a;
    a.kind = ActionKind::TranslationLift;
    a.commutes_with_translation = true;
    return a;
}

ActionDescriptor ActionDescriptor::spectrum_fixing(ActionDescriptor fiber_action, bool commutes) {
    ActionDescriptor a;
    a.kind = ActionKind::SpectrumFixing;
    a.rokhlin_dimension = fiber_action.rokhlin_dimension;
    a.inner = std::make_shared<ActionDescriptor>(std::move(fiber_action));
    a.commutes_with_translation = commutes;
    return a;
}

ActionDescriptor ActionDescriptor::dual_of(ActionDescriptor original) {
    ActionDescriptor a;
    a.kind = ActionKind::DualOf;
    a.inner = std::make_shared<ActionDescriptor>(std::move(original));
    return a;
}

std::string ActionDescriptor::str() const {
    switch (kind) {
        case ActionKind::TraceScaling: return "trace(" + to_string(factor) + ")";
        case ActionKind::QuasiFreeO2:
            if (irrational)
                return std::string("quasifree(irrational,") + (positive_parameter ? "+" : "-") +
                       ")";
            return "quasifree(" + to_string(factor) + ")";
        case ActionKind::TranslationLift: return "translation";
        case ActionKind::SpectrumFixing: return "spectrum-fixing[" + inner->str() + "]";
        case ActionKind::DualOf: return "dual[" + inner->str() + "]";
    }
    return "?";
}

bool same_action(const ActionDescriptor& a, const ActionDescriptor& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ActionKind::TraceScaling: return a.factor == b.factor;
        case ActionKind::QuasiFreeO2:
            if (a.irrational != b.irrational) return false;
            return a.irrational ? a.positive_parameter == b.positive_parameter
                                : a.factor == b.factor;
        case ActionKind::TranslationLift: return true;
        case ActionKind::SpectrumFixing:
        case ActionKind::DualOf: return same_action(*a.inner, *b.inner);
    }
    return false;
}

// --- CharClass ---------------------------------------------------------------------

bool CharClass::is_trivial() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const topology::CohClass& c) { return c.is_zero(); });
}

const topology::CohClass* CharClass::component(int degree) const {
    for (const auto& c : entries)
        if (c.degree == degree) return &c;
    return nullptr;
}

std::string CharClass::str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& c : entries) {
        if (c.is_zero()) continue;
        os << (first ? "" : ", ") << "deg " << c.degree << ": (";
        for (std::size_t i = 0; i < c.components.size(); ++i)
            os << (i ? "," : "") << c.components[i].get_str();
        os << ")";
        first = false;
    }
    return os.str();
}

// --- CstarExpr -----------------------------------------------------------------------

CrossedGroup dual_group(CrossedGroup g) {
    switch (g) {
        case CrossedGroup::Z: return CrossedGroup::S1;
        case CrossedGroup::S1: return CrossedGroup::Z;
        case CrossedGroup::R: return CrossedGroup::R;
        case CrossedGroup::Zn:
            throw UnsupportedError("dual_group: torus duals of Z^n actions are out of scope");
    }
    throw InternalError("dual_group: unhandled group");
}

std::string group_str(CrossedGroup g, int n) {
    switch (g) {
        case CrossedGroup::Z: return "Z";
        case CrossedGroup::R: return "R";
        case CrossedGroup::S1: return "S1";
        case CrossedGroup::Zn: return "Z^" + std::to_string(n);
    }
    return "?";
}

ModuleTag ModuleTag::twist_by(ActionDescriptor a) {
    ModuleTag m;
    m.twist = std::move(a);
    return m;
}

ModuleTag ModuleTag::opaque_tag(std::string tag) {
    ModuleTag m;
    m.opaque = std::move(tag);
    return m;
}

std::string ModuleTag::str() const {
    if (twist) return "twist by " + twist->str();
    return opaque;
}

struct CstarExpr::Node {
    ExprKind kind = ExprKind::Fiber;
    Space space = Space::point();
    SSAlgebra algebra;
    bool stabilized = false;
    CharClass cls;
    std::vector<CstarExpr> children;
    CrossedGroup group = CrossedGroup::Z;
    int zn = 0;
    std::optional<ActionDescriptor> action;
    std::optional<ModuleTag> module;
};

CstarExpr::CstarExpr() : CstarExpr(fiber(SSAlgebra::complex(), false).node_) {}

CstarExpr::CstarExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

CstarExpr CstarExpr::bundle(Space space, SSAlgebra fiber, CharClass cls) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::BundleAlg;
    n->space = std::move(space);
    n->algebra = std::move(fiber);
    n->cls = std::move(cls);
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::fiber(SSAlgebra algebra, bool stabilized) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Fiber;
    n->algebra = std::move(algebra);
    n->stabilized = stabilized;
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::tensor(std::vector<CstarExpr> children) {
    if (children.empty()) throw ValidationError("tensor: needs at least one factor");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Tensor;
    n->children = std::move(children);
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::tensor_over_base(std::vector<CstarExpr> children, Space base) {
    if (children.size() < 2)
        throw ValidationError("tensor_over_base: needs at least two factors");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::TensorOverBase;
    n->children = std::move(children);
    n->space = std::move(base);
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::stabilize(CstarExpr child) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Stabilize;
    n->children.push_back(std::move(child));
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::crossed(CstarExpr child, CrossedGroup group, ActionDescriptor action,
                             int zn) {
    if (group == CrossedGroup::Zn && zn < 1)
        throw ValidationError("crossed: Z^n needs n >= 1");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Crossed;
    n->children.push_back(std::move(child));
    n->group = group;
    n->zn = zn;
    n->action = std::move(action);
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::cuntz_pimsner(CstarExpr child, ModuleTag module) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::CuntzPimsner;
    n->children.push_back(std::move(child));
    n->module = std::move(module);
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::induced(CstarExpr child, ActionDescriptor action) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Induced;
    n->children.push_back(std::move(child));
    n->action = std::move(action);
    return CstarExpr(std::move(n));
}

CstarExpr CstarExpr::functions_on(Space space) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::FunctionsOn;
    n->space = std::move(space);
    return CstarExpr(std::move(n));
}

ExprKind CstarExpr::kind() const { return node_->kind; }
const Space& CstarExpr::space() const { return node_->space; }
const SSAlgebra& CstarExpr::algebra() const { return node_->algebra; }
bool CstarExpr::stabilized() const { return node_->stabilized; }
const CharClass& CstarExpr::char_class() const { return node_->cls; }
const std::vector<CstarExpr>& CstarExpr::children() const { return node_->children; }
CrossedGroup CstarExpr::group() const { return node_->group; }
int CstarExpr::zn() const { return node_->zn; }
const ActionDescriptor& CstarExpr::action() const { return *node_->action; }
const ModuleTag& CstarExpr::module_tag() const { return *node_->module; }

CstarExpr CstarExpr::with_children(std::vector<CstarExpr> children) const {
    auto n = std::make_shared<Node>(*node_);
    n->children = std::move(children);
    return CstarExpr(std::move(n));
}

bool CstarExpr::operator==(const CstarExpr& other) const { return str() == other.str(); }

std::string CstarExpr::str() const {
    const Node& n = *node_;
    auto wrap = [](const CstarExpr& e) {
        std::string s = e.str();
        if (e.kind() == ExprKind::Tensor) return "(" + s + ")";
        return s;
    };
    switch (n.kind) {
        case ExprKind::BundleAlg:
            return "Bundle(" + n.space.str() + "; " + n.algebra.str() + "; class " +
                   n.cls.str() + ")";
        case ExprKind::Fiber:
            return n.algebra.str() + (n.stabilized ? " (x) K" : "");
        case ExprKind::Tensor: {
            std::ostringstream os;
            for (std::size_t i = 0; i < n.children.size(); ++i)
                os << (i ? " (x) " : "") << wrap(n.children[i]);
            return os.str();
        }
        case ExprKind::TensorOverBase: {
            std::ostringstream os;
            for (std::size_t i = 0; i < n.children.size(); ++i)
                os << (i ? " (x)_" + n.space.str() + " " : "") << wrap(n.children[i]);
            return os.str();
        }
        case ExprKind::Stabilize:
            return wrap(n.children.front()) + " (x) K";
        case ExprKind::Crossed:
            return "Crossed(" + n.children.front().str() + "; " + group_str(n.group, n.zn) +
                   "; " + n.action->str() + ")";
        case ExprKind::CuntzPimsner:
            return "CuntzPimsner(" + n.children.front().str() + "; " + n.module->str() + ")";
        case ExprKind::Induced:
            return "Ind_Z^R(" + n.children.front().str() + "; " + n.action->str() + ")";
        case ExprKind::FunctionsOn:
            return "C(" + n.space.str() + ")";
    }
    return "?";
}

bool is_bundle_form(const CstarExpr& e) {
    switch (e.kind()) {
        case ExprKind::Crossed:
        case ExprKind::CuntzPimsner:
        case ExprKind::Induced:
            return false;
        default:
            break;
    }
    for (const CstarExpr& c : e.children())
        if (!is_bundle_form(c)) return false;
    return true;
}

SSAlgebra fiber_algebra(const CstarExpr& e) {
    switch (e.kind()) {
        case ExprKind::BundleAlg: return e.algebra();
        case ExprKind::Fiber: return e.algebra();
        case ExprKind::FunctionsOn: return SSAlgebra::complex();
        case ExprKind::Tensor:
        case ExprKind::TensorOverBase: {
            SSAlgebra acc = SSAlgebra::complex();
            for (const CstarExpr& c : e.children()) {
                SSAlgebra f = fiber_algebra(c);
                if (f.is_derived() || acc.is_derived()) {
                    if (acc.kind() == catalog::AlgebraKind::Complex) acc = f;
                    continue; // no table entry; keep the nontrivial one
                }
                acc = catalog::tensor_ssa(acc, f);
            }
            return acc;
        }
        case ExprKind::Stabilize:
        case ExprKind::Crossed:
        case ExprKind::CuntzPimsner:
        case ExprKind::Induced:
            return fiber_algebra(e.children().front());
    }
    return SSAlgebra::complex();
}

} // namespace tdual::calg
