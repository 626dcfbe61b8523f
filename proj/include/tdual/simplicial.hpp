#pragma once

#include "tdual/abgroup.hpp"

#include <vector>

namespace tdual::topology {

// Finite abstract simplicial complex given by its maximal simplices.
// Vertices are 0..vertex_count-1; simplices are stored as sorted vertex sets.
struct SimplicialComplex {
    std::size_t vertex_count = 0;
    std::vector<std::vector<int>> maximal_simplices;

    // Validates vertex bounds and that simplices are genuine sets.
    void validate() const;
    int dimension() const;

    bool operator==(const SimplicialComplex& other) const = default;
};

// All k-simplices of the complex (every subset of a maximal simplex),
// sorted lexicographically. Index 0 holds the vertices.
std::vector<std::vector<std::vector<int>>> simplex_lists(const SimplicialComplex& k);

// Boundary maps d_1, ..., d_dim with the ascending-vertex sign convention:
// d[v0..vk] = sum_i (-1)^i [v0..\hat{v_i}..vk]. Rows and columns follow the
// lexicographic simplex order of simplex_lists. d_k * d_{k+1} = 0 exactly.
std::vector<abgroup::IntMatrix> chain_complex(const SimplicialComplex& k);

// H_k of the complex (integral coefficients).
abgroup::SLocalGroup homology_of_complex(const SimplicialComplex& k, int degree);

// Euler characteristic as the alternating simplex-count sum.
long euler_characteristic(const SimplicialComplex& k);

// Eilenberg-Zilber staircase triangulation of the product: vertices are
// pairs (u, v) flattened as u * right.vertex_count + v; each pair of maximal
// simplices contributes one simplex per monotone lattice path.
SimplicialComplex product_triangulation(const SimplicialComplex& left,
                                        const SimplicialComplex& right);

// Stock triangulations used as oracles for the named-space formulas.
SimplicialComplex triangulated_point();
SimplicialComplex triangulated_circle();   // hollow triangle
SimplicialComplex triangulated_sphere2();  // boundary of the 3-simplex
SimplicialComplex triangulated_torus2();   // 9-vertex grid torus
SimplicialComplex triangulated_rp2();      // standard 6-vertex triangulation
SimplicialComplex triangulated_torus(int n); // n-fold product of circles

} // namespace tdual::topology
