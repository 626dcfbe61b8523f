#include "tdual/simplicial.hpp"

#include "tdual/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tdual::topology {

using abgroup::IntMatrix;
using abgroup::SLocalGroup;

void SimplicialComplex::validate() const {
    for (const auto& s : maximal_simplices) {
        if (s.empty()) throw ValidationError("simplicial complex: empty simplex");
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || static_cast<std::size_t>(s[i]) >= vertex_count)
                throw ValidationError("simplicial complex: vertex out of range");
            if (i > 0 && s[i] <= s[i - 1])
                throw ValidationError("simplicial complex: simplex vertices must be strictly "
                                      "ascending");
        }
    }
}

int SimplicialComplex::dimension() const {
    std::size_t top = 0;
    for (const auto& s : maximal_simplices) top = std::max(top, s.size());
    return static_cast<int>(top) - 1;
}

std::vector<std::vector<std::vector<int>>> simplex_lists(const SimplicialComplex& k) {
    k.validate();
    const int dim = k.dimension();
    std::vector<std::set<std::vector<int>>> by_dim(static_cast<std::size_t>(dim + 1));
    for (const auto& maximal : k.maximal_simplices) {
        const std::size_t n = maximal.size();
        // every nonempty subset is a face
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> face;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) face.push_back(maximal[i]);
            by_dim[face.size() - 1].insert(std::move(face));
        }
    }
    std::vector<std::vector<std::vector<int>>> out;
    for (auto& level : by_dim) out.emplace_back(level.begin(), level.end());
    return out;
}

std::vector<IntMatrix> chain_complex(const SimplicialComplex& k) {
    auto lists = simplex_lists(k);
    std::vector<IntMatrix> boundaries;
    for (std::size_t d = 1; d < lists.size(); ++d) {
        std::map<std::vector<int>, std::size_t> row_index;
        for (std::size_t i = 0; i < lists[d - 1].size(); ++i) row_index[lists[d - 1][i]] = i;
        IntMatrix b(lists[d - 1].size(), lists[d].size());
        for (std::size_t j = 0; j < lists[d].size(); ++j) {
            const auto& simplex = lists[d][j];
            int sign = 1;
            for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
                std::vector<int> face;
                for (std::size_t i = 0; i < simplex.size(); ++i)
                    if (i != drop) face.push_back(simplex[i]);
                b.at(row_index.at(face), j) += sign;
                sign = -sign;
            }
        }
        boundaries.push_back(std::move(b));
    }
    return boundaries;
}

SLocalGroup homology_of_complex(const SimplicialComplex& k, int degree) {
    if (degree < 0) return SLocalGroup::trivial();
    auto lists = simplex_lists(k);
    const int dim = static_cast<int>(lists.size()) - 1;
    if (degree > dim) return SLocalGroup::trivial();
    auto boundaries = chain_complex(k);

    const auto n_k = static_cast<long>(lists[static_cast<std::size_t>(degree)].size());
    // rank d_k (d_0 = 0) and the invariant factors of d_{k+1}
    std::size_t rank_k = 0;
    if (degree > 0) rank_k = abgroup::rank(boundaries[static_cast<std::size_t>(degree - 1)]);
    std::size_t rank_k1 = 0;
    std::vector<Int> torsion;
    if (degree < dim) {
        auto factors =
            abgroup::smith_invariant_factors(boundaries[static_cast<std::size_t>(degree)]);
        for (const Int& f : factors)
            if (f != 0) {
                ++rank_k1;
                if (f > 1) torsion.push_back(f);
            }
    }
    long free_rank = n_k - static_cast<long>(rank_k) - static_cast<long>(rank_k1);
    return SLocalGroup(free_rank, torsion, {});
}

long euler_characteristic(const SimplicialComplex& k) {
    auto lists = simplex_lists(k);
    long chi = 0;
    int sign = 1;
    for (const auto& level : lists) {
        chi += sign * static_cast<long>(level.size());
        sign = -sign;
    }
    return chi;
}

SimplicialComplex product_triangulation(const SimplicialComplex& left,
                                        const SimplicialComplex& right) {
    left.validate();
    right.validate();
    SimplicialComplex prod;
    prod.vertex_count = left.vertex_count * right.vertex_count;
    auto encode = [&](int u, int v) {
        return u * static_cast<int>(right.vertex_count) + v;
    };
    std::set<std::vector<int>> cells;
    for (const auto& sl : left.maximal_simplices)
        for (const auto& sr : right.maximal_simplices) {
            const std::size_t p = sl.size() - 1;
            const std::size_t q = sr.size() - 1;
            // enumerate monotone staircase paths from (0,0) to (p,q)
            std::vector<std::pair<std::size_t, std::size_t>> path{{0, 0}};
            std::vector<std::vector<std::pair<std::size_t, std::size_t>>> stack{path};
            while (!stack.empty()) {
                auto cur = stack.back();
                stack.pop_back();
                auto [i, j] = cur.back();
                if (i == p && j == q) {
                    std::vector<int> cell;
                    for (auto [a, b] : cur) cell.push_back(encode(sl[a], sr[b]));
                    std::sort(cell.begin(), cell.end());
                    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
                    cells.insert(std::move(cell));
                    continue;
                }
                if (i < p) {
                    auto next = cur;
                    next.emplace_back(i + 1, j);
                    stack.push_back(std::move(next));
                }
                if (j < q) {
                    auto next = cur;
                    next.emplace_back(i, j + 1);
                    stack.push_back(std::move(next));
                }
            }
        }
    prod.maximal_simplices.assign(cells.begin(), cells.end());
    return prod;
}

SimplicialComplex triangulated_point() { return {1, {{0}}}; }

SimplicialComplex triangulated_circle() { return {3, {{0, 1}, {0, 2}, {1, 2}}}; }

SimplicialComplex triangulated_sphere2() {
    return {4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
}

SimplicialComplex triangulated_torus2() {
    return product_triangulation(triangulated_circle(), triangulated_circle());
}

SimplicialComplex triangulated_rp2() {
    // antipodal quotient of the icosahedron: 6 vertices, 15 edges, 10 triangles
    return {6,
            {{0, 1, 2},
             {0, 2, 3},
             {0, 3, 4},
             {0, 4, 5},
             {0, 1, 5},
             {1, 2, 4},
             {2, 3, 5},
             {1, 3, 4},
             {2, 4, 5},
             {1, 3, 5}}};
}

SimplicialComplex triangulated_torus(int n) {
    if (n < 1) throw ValidationError("triangulated_torus: dimension must be >= 1");
    SimplicialComplex t = triangulated_circle();
    for (int i = 1; i < n; ++i) t = product_triangulation(t, triangulated_circle());
    return t;
}

} // namespace tdual::topology
