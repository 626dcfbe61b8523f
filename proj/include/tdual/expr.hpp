#pragma once

#include "tdual/catalog.hpp"
#include "tdual/space.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tdual::calg {

// --- actions -----------------------------------------------------------------

enum class ActionKind {
    TraceScaling,   // automorphism of a stabilized UHF fiber scaling the trace
    QuasiFreeO2,    // flow on O_2 rotating the two generators
    TranslationLift, // lift of the circle translation on the spectrum
    SpectrumFixing, // fiberwise action wrapping an inner fiber automorphism
    DualOf,         // the dual action on a crossed product
};

enum class RokhlinDimension { Zero, One, Unknown };

struct ActionDescriptor {
    ActionKind kind = ActionKind::TranslationLift;
    Rat factor = 0;            // TraceScaling: s > 0; QuasiFreeO2 rational parameter
    bool irrational = false;   // QuasiFreeO2: parameter is irrational (only the sign kept)
    bool positive_parameter = true; // QuasiFreeO2 irrational sign
    std::shared_ptr<const ActionDescriptor> inner; // SpectrumFixing / DualOf payload
    RokhlinDimension rokhlin_dimension = RokhlinDimension::Unknown;
    bool commutes_with_translation = false;

    static ActionDescriptor trace_scaling(const Rat& factor);
    static ActionDescriptor quasifree_irrational(bool positive);
    static ActionDescriptor quasifree_rational(const Rat& lambda);
    static ActionDescriptor translation();
    static ActionDescriptor spectrum_fixing(ActionDescriptor fiber_action,
                                            bool commutes = true);
    static ActionDescriptor dual_of(ActionDescriptor original);

    std::string str() const;
};

// Identity of the underlying action, ignoring the regularity flags; this is
// what the duality rewrites compare.
bool same_action(const ActionDescriptor& a, const ActionDescriptor& b);

// --- characteristic classes -----------------------------------------------------

// One cohomology component per factor of the classification group.
struct CharClass {
    std::vector<topology::CohClass> entries; // ascending degree

    static CharClass trivial() { return {}; }
    bool is_trivial() const;
    const topology::CohClass* component(int degree) const;
    bool operator==(const CharClass& other) const = default;
    std::string str() const;
};

// --- expressions -----------------------------------------------------------------

enum class ExprKind {
    BundleAlg,      // section algebra of a locally trivial A(x)K bundle
    Fiber,          // bare catalog algebra, optionally stabilized
    Tensor,
    TensorOverBase, // C0(base)-balanced tensor product
    Stabilize,      // (x) K
    Crossed,
    CuntzPimsner,
    Induced,        // Ind_Z^R
    FunctionsOn,    // C0(X)
};

enum class CrossedGroup { Z, R, S1, Zn };

CrossedGroup dual_group(CrossedGroup g); // Z <-> S1, R <-> R
std::string group_str(CrossedGroup g, int n = 0);

// Cuntz-Pimsner module datum: either the twist of the base algebra by a
// fiber automorphism (enough to apply the crossed-product identification)
// or an opaque tag that stays symbolic.
struct ModuleTag {
    std::optional<ActionDescriptor> twist;
    std::string opaque;

    static ModuleTag twist_by(ActionDescriptor a);
    static ModuleTag opaque_tag(std::string tag);
    std::string str() const;
};

class CstarExpr {
public:
    CstarExpr(); // C

    static CstarExpr bundle(topology::Space space, catalog::SSAlgebra fiber, CharClass cls);
    static CstarExpr fiber(catalog::SSAlgebra algebra, bool stabilized);
    static CstarExpr tensor(std::vector<CstarExpr> children);
    static CstarExpr tensor_over_base(std::vector<CstarExpr> children, topology::Space base);
    static CstarExpr stabilize(CstarExpr child);
    static CstarExpr crossed(CstarExpr child, CrossedGroup group, ActionDescriptor action,
                             int zn = 0);
    static CstarExpr cuntz_pimsner(CstarExpr child, ModuleTag module);
    static CstarExpr induced(CstarExpr child, ActionDescriptor action);
    static CstarExpr functions_on(topology::Space space);

    ExprKind kind() const;
    const topology::Space& space() const;            // BundleAlg / FunctionsOn / base
    const catalog::SSAlgebra& algebra() const;       // BundleAlg fiber / Fiber
    bool stabilized() const;                          // Fiber
    const CharClass& char_class() const;              // BundleAlg
    const std::vector<CstarExpr>& children() const;   // any node (possibly empty)
    CrossedGroup group() const;                       // Crossed
    int zn() const;                                   // Crossed with Zn
    const ActionDescriptor& action() const;           // Crossed / Induced
    const ModuleTag& module_tag() const;              // CuntzPimsner

    CstarExpr with_children(std::vector<CstarExpr> children) const;

    bool operator==(const CstarExpr& other) const;
    std::string str() const;

private:
    struct Node;
    explicit CstarExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

// Fold of the catalog fibers occurring in the expression; C when none.
// Drives the action-validation and branch dispatch of the dualizer.
catalog::SSAlgebra fiber_algebra(const CstarExpr& e);

// True when the expression is free of crossed-product, Cuntz-Pimsner and
// induced-algebra nodes, i.e. it presents an honest bundle algebra.
bool is_bundle_form(const CstarExpr& e);

} // namespace tdual::calg
