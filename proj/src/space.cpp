#include "tdual/space.hpp"

#include "tdual/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tdual::topology {

// --- CohClass ----------------------------------------------------------------

CohClass CohClass::zero(int degree, abgroup::SLocalGroup group) {
    CohClass c;
    c.degree = degree;
    c.components.assign(group.generator_count(), Int(0));
    c.group = std::move(group);
    return c;
}

void CohClass::validate() const {
    if (degree < 0) throw ValidationError("CohClass: negative degree");
    if (components.size() != group.generator_count())
        throw ValidationError("CohClass: component vector length does not match the group");
}

bool CohClass::is_zero() const {
    validate();
    for (std::size_t i = 0; i < components.size(); ++i) {
        Int order = group.relation_order(i);
        if (order == 0 ? components[i] != 0 : !divides(order, components[i])) return false;
    }
    return true;
}

bool CohClass::is_torsion() const {
    validate();
    for (std::size_t i = 0; i < static_cast<std::size_t>(group.free_rank()); ++i)
        if (components[i] != 0) return false;
    return true;
}

std::string CohClass::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < components.size(); ++i)
        os << (i ? "," : "") << components[i].get_str();
    os << ") in " << group.str() << " (deg " << degree << ")";
    return os.str();
}

// --- Space ---------------------------------------------------------------------

struct Space::Node {
    SpaceKind kind = SpaceKind::Point;
    int parameter = 0;
    std::vector<Space> factors;
    std::optional<SimplicialComplex> complex;
    std::shared_ptr<const Space> base;
    std::shared_ptr<const Space> left;
    std::shared_ptr<const Space> right;
    std::optional<CohClass> chern;
    std::string tag;
};

Space Space::point() {
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::Point;
    return Space(std::move(n));
}

Space Space::circle() {
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::Circle;
    return Space(std::move(n));
}

Space Space::sphere(int dim) {
    if (dim < 1) throw ValidationError("Space: sphere dimension must be >= 1");
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::Sphere;
    n->parameter = dim;
    return Space(std::move(n));
}

Space Space::torus(int dim) {
    if (dim < 1) throw ValidationError("Space: torus dimension must be >= 1");
    if (dim == 1) return circle();
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::Torus;
    n->parameter = dim;
    return Space(std::move(n));
}

Space Space::rp2() {
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::RealProjectivePlane;
    return Space(std::move(n));
}

Space Space::product(std::vector<Space> factors) {
    // Flatten nested products, drop Point factors, merge circle and torus
    // factors into one torus, sort the rest: one canonical form per product.
    std::vector<Space> flat;
    int torus_rank = 0;
    for (Space& f : factors) {
        if (f.kind() == SpaceKind::Product) {
            for (const Space& g : f.factors()) {
                if (g.kind() == SpaceKind::Circle)
                    torus_rank += 1;
                else if (g.kind() == SpaceKind::Torus)
                    torus_rank += g.parameter();
                else
                    flat.push_back(g);
            }
        } else if (f.kind() == SpaceKind::Circle) {
            torus_rank += 1;
        } else if (f.kind() == SpaceKind::Torus) {
            torus_rank += f.parameter();
        } else if (f.kind() != SpaceKind::Point) {
            flat.push_back(std::move(f));
        }
    }
    if (torus_rank > 0) flat.push_back(torus(torus_rank));
    if (flat.empty()) return point();
    if (flat.size() == 1) return flat.front();
    std::sort(flat.begin(), flat.end());
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::Product;
    n->factors = std::move(flat);
    return Space(std::move(n));
}

Space Space::triangulated(SimplicialComplex complex) {
    complex.validate();
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::Triangulated;
    n->complex = std::move(complex);
    return Space(std::move(n));
}

Space Space::fiber_product(Space left, Space right, Space base) {
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::FiberProduct;
    n->left = std::make_shared<Space>(std::move(left));
    n->right = std::make_shared<Space>(std::move(right));
    n->base = std::make_shared<Space>(std::move(base));
    return Space(std::move(n));
}

Space Space::nc_space(std::string tag) {
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::NCSpace;
    n->tag = std::move(tag);
    return Space(std::move(n));
}

Space Space::circle_bundle(Space base, CohClass c1) {
    c1.validate();
    if (c1.degree != 2)
        throw ValidationError("Space: a circle bundle needs a degree-2 chern class");
    auto n = std::make_shared<Node>();
    n->kind = SpaceKind::CircleBundle;
    n->base = std::make_shared<Space>(std::move(base));
    n->chern = std::move(c1);
    return Space(std::move(n));
}

SpaceKind Space::kind() const { return node_->kind; }
int Space::parameter() const { return node_->parameter; }
const std::vector<Space>& Space::factors() const { return node_->factors; }
const SimplicialComplex& Space::complex() const { return *node_->complex; }
const Space& Space::base() const { return *node_->base; }
const Space& Space::fp_left() const { return *node_->left; }
const Space& Space::fp_right() const { return *node_->right; }
const CohClass& Space::chern_class() const { return *node_->chern; }
const std::string& Space::tag() const { return node_->tag; }

int Space::dimension() const {
    switch (kind()) {
        case SpaceKind::Point: return 0;
        case SpaceKind::Circle: return 1;
        case SpaceKind::Sphere: return parameter();
        case SpaceKind::Torus: return parameter();
        case SpaceKind::RealProjectivePlane: return 2;
        case SpaceKind::Product: {
            int d = 0;
            for (const Space& f : factors()) {
                int fd = f.dimension();
                if (fd < 0) return -1;
                d += fd;
            }
            return d;
        }
        case SpaceKind::Triangulated: return complex().dimension();
        case SpaceKind::CircleBundle: {
            int bd = base().dimension();
            return bd < 0 ? -1 : bd + 1;
        }
        case SpaceKind::FiberProduct:
        case SpaceKind::NCSpace: return -1;
    }
    return -1;
}

bool Space::has_circle_action() const {
    switch (kind()) {
        case SpaceKind::Circle: return true;
        case SpaceKind::Torus: return true;
        case SpaceKind::CircleBundle: return true;
        case SpaceKind::Product:
            return std::any_of(factors().begin(), factors().end(),
                               [](const Space& f) { return f.has_circle_action(); });
        default: return false;
    }
}

bool Space::operator==(const Space& other) const { return str() == other.str(); }

std::string Space::str() const {
    switch (kind()) {
        case SpaceKind::Point: return "pt";
        case SpaceKind::Circle: return "S1";
        case SpaceKind::Sphere: return "S" + std::to_string(parameter());
        case SpaceKind::Torus: return "T" + std::to_string(parameter());
        case SpaceKind::RealProjectivePlane: return "RP2";
        case SpaceKind::Product: {
            std::ostringstream os;
            for (std::size_t i = 0; i < factors().size(); ++i)
                os << (i ? " x " : "") << factors()[i].str();
            return os.str();
        }
        case SpaceKind::Triangulated: {
            const auto& k = complex();
            return "Triangulated(v=" + std::to_string(k.vertex_count) +
                   ",cells=" + std::to_string(k.maximal_simplices.size()) + ")";
        }
        case SpaceKind::FiberProduct:
            return fp_left().str() + " x_{" + base().str() + "} " + fp_right().str();
        case SpaceKind::NCSpace: return "NC[" + tag() + "]";
        case SpaceKind::CircleBundle: {
            std::ostringstream os;
            os << "CircleBundle(" << base().str() << "; c1=(";
            const auto& c = chern_class();
            for (std::size_t i = 0; i < c.components.size(); ++i)
                os << (i ? "," : "") << c.components[i].get_str();
            os << "))";
            return os.str();
        }
    }
    return "?";
}

} // namespace tdual::topology
