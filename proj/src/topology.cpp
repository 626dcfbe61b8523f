#include "tdual/topology.hpp"

#include "tdual/errors.hpp"

namespace tdual::topology {

using abgroup::SLocalGroup;

namespace {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

SLocalGroup homology_named(const Space& x, int k) {
    switch (x.kind()) {
        case SpaceKind::Point:
            return k == 0 ? SLocalGroup::free(1) : SLocalGroup::trivial();
        case SpaceKind::Circle:
            return (k == 0 || k == 1) ? SLocalGroup::free(1) : SLocalGroup::trivial();
        case SpaceKind::Sphere: {
            int n = x.parameter();
            if (k == 0 || k == n) return SLocalGroup::free(1);
            return SLocalGroup::trivial();
        }
        case SpaceKind::Torus:
            return SLocalGroup::free(binomial(x.parameter(), k));
        case SpaceKind::RealProjectivePlane:
            if (k == 0) return SLocalGroup::free(1);
            if (k == 1) return SLocalGroup::cyclic(2);
            return SLocalGroup::trivial();
        default:
            throw InternalError("homology_named: not a named space");
    }
}

} // namespace

SLocalGroup integral_homology(const Space& x, int degree) {
    if (degree < 0) return SLocalGroup::trivial();
    switch (x.kind()) {
        case SpaceKind::Point:
        case SpaceKind::Circle:
        case SpaceKind::Sphere:
        case SpaceKind::Torus:
        case SpaceKind::RealProjectivePlane:
            return homology_named(x, degree);
        case SpaceKind::Product: {
            // fold pairwise through the Kunneth formula; canonicalization
            // guarantees at least two factors
            const auto& fs = x.factors();
            std::vector<Space> rest(fs.begin() + 1, fs.end());
            return kunneth_homology(fs.front(), Space::product(rest), degree);
        }
        case SpaceKind::Triangulated:
            return homology_of_complex(x.complex(), degree);
        case SpaceKind::FiberProduct:
            throw UnsupportedError("integral_homology: fiber products need an explicit "
                                   "triangulation");
        case SpaceKind::NCSpace:
            throw UnsupportedError("integral_homology: noncommutative space has no "
                                   "classical homology");
        case SpaceKind::CircleBundle:
            throw UnsupportedError("integral_homology: nontrivial circle bundles are only "
                                   "supported with explicitly supplied data");
    }
    throw InternalError("integral_homology: unhandled space kind");
}

SLocalGroup kunneth_homology(const Space& x, const Space& y, int degree) {
    SLocalGroup result = SLocalGroup::trivial();
    for (int i = 0; i <= degree; ++i) {
        result = direct_sum(result,
                            tensor(integral_homology(x, i), integral_homology(y, degree - i)));
    }
    for (int i = 0; i <= degree - 1; ++i) {
        result = direct_sum(result,
                            tor(integral_homology(x, i), integral_homology(y, degree - 1 - i)));
    }
    return result;
}

SLocalGroup cohomology(const Space& x, int degree, const SLocalGroup& m) {
    if (degree < 0) return SLocalGroup::trivial();
    SLocalGroup hk = integral_homology(x, degree);
    SLocalGroup hk1 = degree > 0 ? integral_homology(x, degree - 1) : SLocalGroup::trivial();
    return direct_sum(hom_into(hk, m), ext_into(hk1, m));
}

CircleKunnethBlocks circle_kunneth_blocks(const Space& w, int degree, const SLocalGroup& m) {
    return {cohomology(w, degree, m), cohomology(w, degree - 1, m)};
}

SLocalGroup CircleKunnethBlocks::total() const { return direct_sum(top, fiber); }

CohClass gysin_pushforward(const Space& w, const CohClass& c, const SLocalGroup& coefficients) {
    c.validate();
    CircleKunnethBlocks blocks = circle_kunneth_blocks(w, c.degree, coefficients);
    // Slicing components block-by-block needs the canonical generator order
    // of the sum to agree with [top | fiber] concatenation; torsion in the
    // top block would interleave.
    if (!blocks.top.is_torsion_free())
        throw UnsupportedError("gysin_pushforward: torsion in the base-degree block is not "
                               "supported");
    if (!(blocks.total() == c.group))
        throw ValidationError("gysin_pushforward: class does not live in the Kunneth "
                              "decomposition of H^*(W x S1)");
    CohClass out;
    out.degree = c.degree - 1;
    out.group = blocks.fiber;
    const std::size_t offset = blocks.top.generator_count();
    out.components.assign(c.components.begin() + static_cast<long>(offset),
                          c.components.end());
    out.validate();
    return out;
}

} // namespace tdual::topology
