#pragma once

#include "tdual/simplicial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tdual::topology {

class Space;

// Cohomology class: a coordinate vector over the generators of the group it
// lives in (free generators first, then torsion generators).
struct CohClass {
    int degree = 0;
    abgroup::SLocalGroup group;
    std::vector<Int> components;

    static CohClass zero(int degree, abgroup::SLocalGroup group);
    bool is_zero() const;       // trivial element (torsion coords mod order)
    bool is_torsion() const;    // finite order element
    void validate() const;
    bool operator==(const CohClass& other) const = default;
    std::string str() const;
};

enum class SpaceKind {
    Point,
    Circle,
    Sphere,       // Sphere(n), n >= 1
    Torus,        // Torus(n), n >= 1
    RealProjectivePlane,
    Product,      // canonicalized: flattened, Point-free, sorted
    Triangulated,
    FiberProduct, // left x_base right
    NCSpace,      // noncommutative output with a tag
    CircleBundle, // principal circle bundle over `base` with chern class c1
};

// Immutable value type for the finite spaces the engine can name.
class Space {
public:
    Space() : Space(point()) {}

    static Space point();
    static Space circle();
    static Space sphere(int n);
    static Space torus(int n);
    static Space rp2();
    static Space product(std::vector<Space> factors); // canonicalizes
    static Space triangulated(SimplicialComplex complex);
    static Space fiber_product(Space left, Space right, Space base);
    static Space nc_space(std::string tag);
    static Space circle_bundle(Space base, CohClass c1);

    SpaceKind kind() const;
    int parameter() const;                      // Sphere/Torus dimension
    const std::vector<Space>& factors() const;  // Product
    const SimplicialComplex& complex() const;   // Triangulated
    const Space& base() const;                  // CircleBundle / FiberProduct
    const Space& fp_left() const;
    const Space& fp_right() const;
    const CohClass& chern_class() const;        // CircleBundle
    const std::string& tag() const;             // NCSpace

    bool is_commutative() const { return kind() != SpaceKind::NCSpace; }
    // Dimension of the underlying space; -1 when it has no classical model.
    int dimension() const;
    // True when the space visibly carries a free circle action: an explicit
    // circle factor or a principal-bundle datum.
    bool has_circle_action() const;

    bool operator==(const Space& other) const;
    bool operator<(const Space& other) const { return str() < other.str(); }

    std::string str() const;

private:
    struct Node;
    explicit Space(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

} // namespace tdual::topology
