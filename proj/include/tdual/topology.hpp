#pragma once

#include "tdual/space.hpp"

namespace tdual::topology {

// H_k(X; Z). Named spaces go through closed formulas, products through the
// Kunneth formula, triangulations through the chain complex. The two routes
// agree on the stock catalog (asserted by the oracle tests).
abgroup::SLocalGroup integral_homology(const Space& x, int degree);

// H^k(X; M) by universal coefficients: Hom(H_k, M) (+) Ext(H_{k-1}, M).
abgroup::SLocalGroup cohomology(const Space& x, int degree, const abgroup::SLocalGroup& m);

// (+)_{i+j=k} H_i(X) (x) H_j(Y)  (+)  (+)_{i+j=k-1} Tor(H_i(X), H_j(Y)).
abgroup::SLocalGroup kunneth_homology(const Space& x, const Space& y, int degree);

// Integration over the circle fiber of the trivial bundle W x S1 -> W.
// A degree-k class is given in Kunneth block order
//   [ H^k(W) (x) 1  |  H^{k-1}(W) (x) dtheta ];
// the (x)1 block dies and the (x)dtheta block descends to W in degree k-1.
CohClass gysin_pushforward(const Space& w, const CohClass& c,
                           const abgroup::SLocalGroup& coefficients);

// The two Kunneth blocks of H^k(W x S1; M) in the order used above.
struct CircleKunnethBlocks {
    abgroup::SLocalGroup top;    // H^k(W; M) (x) 1
    abgroup::SLocalGroup fiber;  // H^{k-1}(W; M) (x) dtheta
    abgroup::SLocalGroup total() const;
};
CircleKunnethBlocks circle_kunneth_blocks(const Space& w, int degree,
                                          const abgroup::SLocalGroup& m);

} // namespace tdual::topology
