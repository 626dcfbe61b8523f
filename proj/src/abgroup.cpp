#include "tdual/abgroup.hpp"

#include "tdual/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tdual::abgroup {

// --- PrimeSet ----------------------------------------------------------------

PrimeSet PrimeSet::all() {
    PrimeSet s;
    s.all_ = true;
    return s;
}

PrimeSet PrimeSet::of(std::vector<Int> primes) {
    PrimeSet s;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Int& p : primes) {
        if (p < 2 || !is_probable_prime(p))
            throw ValidationError("PrimeSet: " + p.get_str() + " is not prime");
    }
    s.primes_ = std::move(primes);
    return s;
}

bool PrimeSet::contains(const Int& p) const {
    if (all_) return true;
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

PrimeSet PrimeSet::united(const PrimeSet& other) const {
    if (all_ || other.all_) return all();
    std::vector<Int> merged = primes_;
    merged.insert(merged.end(), other.primes_.begin(), other.primes_.end());
    return of(std::move(merged));
}

bool PrimeSet::operator<(const PrimeSet& other) const {
    if (all_ != other.all_) return !all_;
    return primes_ < other.primes_;
}

std::string PrimeSet::str() const {
    if (all_) return "ALL";
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) os << (i ? "," : "") << primes_[i].get_str();
    os << "}";
    return os.str();
}

// --- SLocalGroup ---------------------------------------------------------------

namespace {

// Rewrites a multiset of cyclic orders into the invariant-factor chain
// d1 | d2 | ... without factoring: replace incomparable pairs by (gcd, lcm)
// until the chain property holds.
std::vector<Int> normalize_chain(std::vector<Int> factors) {
    factors.erase(std::remove_if(factors.begin(), factors.end(),
                                 [](const Int& d) { return d == 1; }),
                  factors.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t j = i + 1; j < factors.size(); ++j) {
                Int g = gcd(factors[i], factors[j]);
                if (g == factors[i] || g == factors[j]) continue;
                Int l = factors[i] / g * factors[j];
                factors[i] = g;
                factors[j] = l;
                changed = true;
            }
    }
    factors.erase(std::remove_if(factors.begin(), factors.end(),
                                 [](const Int& d) { return d == 1; }),
                  factors.end());
    std::sort(factors.begin(), factors.end());
    return factors;
}

Int strip_set(Int d, const PrimeSet& s) {
    if (s.is_all()) return 1;
    for (const Int& p : s.primes()) d = strip_prime(d, p);
    return d;
}

} // namespace

SLocalGroup::SLocalGroup(long free_rank, std::vector<Int> torsion, PrimeSet inverted)
    : free_rank_(free_rank), inverted_(std::move(inverted)) {
    if (free_rank < 0) throw ValidationError("SLocalGroup: negative free rank");
    for (Int& d : torsion) {
        if (d <= 0) throw ValidationError("SLocalGroup: torsion order must be positive");
        d = strip_set(d, inverted_);
    }
    torsion_ = normalize_chain(std::move(torsion));
    // A group without a free part has no visible localization.
    if (free_rank_ == 0) inverted_ = PrimeSet{};
}

SLocalGroup SLocalGroup::free(long rank, PrimeSet s) { return SLocalGroup(rank, {}, std::move(s)); }

SLocalGroup SLocalGroup::cyclic(const Int& n) {
    if (n < 1) throw ValidationError("SLocalGroup: cyclic order must be >= 1");
    return SLocalGroup(0, {n}, {});
}

Int SLocalGroup::relation_order(std::size_t i) const {
    if (i < static_cast<std::size_t>(free_rank_)) return 0;
    return torsion_.at(i - static_cast<std::size_t>(free_rank_));
}

std::string SLocalGroup::str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
        first = false;
        if (inverted_.is_all()) {
            os << "Q";
        } else if (inverted_.empty()) {
            os << "Z";
        } else {
            Int m = 1;
            for (const Int& p : inverted_.primes()) m *= p;
            os << "Z[1/" << m.get_str() << "]";
        }
        if (free_rank_ > 1) os << "^" << free_rank_;
    }
    for (const Int& d : torsion_) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

SLocalGroup direct_sum(const SLocalGroup& a, const SLocalGroup& b) {
    if (a.is_trivial()) return b;
    if (b.is_trivial()) return a;
    if (a.free_rank() > 0 && b.free_rank() > 0 && !(a.inverted_primes() == b.inverted_primes()))
        throw UnsupportedError("direct sum of differently localized free parts is not "
                               "representable as a single S-local group");
    PrimeSet s = a.free_rank() > 0 ? a.inverted_primes() : b.inverted_primes();
    // Finite summands must survive the chosen localization unchanged.
    for (const SLocalGroup* g : {&a, &b})
        for (const Int& d : g->torsion())
            if (strip_set(d, s) != d)
                throw UnsupportedError("direct sum would localize away torsion Z/" + d.get_str());
    std::vector<Int> torsion = a.torsion();
    torsion.insert(torsion.end(), b.torsion().begin(), b.torsion().end());
    return SLocalGroup(a.free_rank() + b.free_rank(), std::move(torsion), s);
}

// --- GroupMap ------------------------------------------------------------------

GroupMap GroupMap::identity(const SLocalGroup& g) {
    return GroupMap{g, g, IntMatrix::identity(g.generator_count()), 1};
}

GroupMap GroupMap::scalar(const SLocalGroup& g, const Int& num, const Int& den) {
    GroupMap m{g, g, IntMatrix::identity(g.generator_count()).scaled(num), den};
    m.validate();
    return m;
}

GroupMap GroupMap::zero(const SLocalGroup& source, const SLocalGroup& target) {
    return GroupMap{source, target,
                    IntMatrix(target.generator_count(), source.generator_count()), 1};
}

void GroupMap::validate() const {
    if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count())
        throw ValidationError("GroupMap: matrix shape does not match generator counts");
    if (denominator == 0) throw ValidationError("GroupMap: zero denominator");
    if (abs(denominator) != 1) {
        // The denominator must be invertible in the target: inverted for the
        // free part, coprime to every torsion order.
        for (const Int& p : prime_factors(denominator)) {
            if (target.free_rank() > 0 && !target.inverted_primes().contains(p))
                throw ValidationError("GroupMap: denominator prime " + p.get_str() +
                                      " is not inverted in the target");
            for (const Int& d : target.torsion())
                if (divides(p, d))
                    throw ValidationError("GroupMap: denominator prime " + p.get_str() +
                                          " divides the torsion order " + d.get_str());
        }
    }
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        Int dj = source.relation_order(j);
        if (dj == 0) continue;
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            Int ei = target.relation_order(i);
            Int v = dj * matrix.at(i, j);
            if (ei == 0) {
                if (v != 0)
                    throw ValidationError(
                        "GroupMap: torsion generator maps to an infinite-order element");
            } else if (!divides(ei, v)) {
                throw ValidationError("GroupMap: matrix does not respect source relations");
            }
        }
    }
}

bool GroupMap::is_identity() const {
    if (!(source == target)) return false;
    if (abs(denominator) != 1) return false;
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            Int expect = (i == j) ? denominator : Int(0);
            Int diff = matrix.at(i, j) - expect;
            Int order = target.relation_order(i);
            if (order == 0 ? diff != 0 : !divides(order, diff)) return false;
        }
    return true;
}

// --- presentations ----------------------------------------------------------------

namespace {

struct PresentedQuotient {
    SLocalGroup group;
    IntMatrix projection; // canonical coordinates of a presentation vector
};

// Z^gens / (row lattice of relation_rows), localized at s, together with the
// coordinate map onto the canonical form. Free coordinates come first in the
// projection, matching the generator convention of SLocalGroup.
PresentedQuotient quotient_presentation(std::size_t gens, const IntMatrix& relation_rows,
                                        const PrimeSet& s) {
    if (relation_rows.rows() > 0 && relation_rows.cols() != gens)
        throw ValidationError("presentation: relations must have one column per generator");
    IntMatrix cols =
        relation_rows.rows() == 0 ? IntMatrix(gens, 0) : relation_rows.transpose();
    SmithDecomposition snf = smith_normal_form(cols);
    const std::size_t diag = std::min(cols.rows(), cols.cols());

    std::vector<std::size_t> free_rows;
    std::vector<std::size_t> torsion_rows;
    std::vector<Int> torsion;
    for (std::size_t i = 0; i < gens; ++i) {
        Int d = i < diag ? snf.D.at(i, i) : Int(0);
        if (d == 0) {
            free_rows.push_back(i);
            continue;
        }
        d = strip_set(d, s);
        if (d > 1) {
            torsion_rows.push_back(i);
            torsion.push_back(d);
        }
    }

    IntMatrix proj(free_rows.size() + torsion_rows.size(), gens);
    std::size_t row = 0;
    for (std::size_t i : free_rows) {
        for (std::size_t j = 0; j < gens; ++j) proj.at(row, j) = snf.U.at(i, j);
        ++row;
    }
    for (std::size_t i : torsion_rows) {
        for (std::size_t j = 0; j < gens; ++j) proj.at(row, j) = snf.U.at(i, j);
        ++row;
    }
    SLocalGroup g(static_cast<long>(free_rows.size()), torsion, s);
    if (g.generator_count() != proj.rows())
        throw InternalError("presentation: canonicalization reordered generators");
    return {std::move(g), std::move(proj)};
}

// Relation lattice of g inside Z^n: d_i * e_i for every torsion coordinate.
IntMatrix relation_lattice(const SLocalGroup& g) {
    const std::size_t n = g.generator_count();
    const std::size_t t = g.torsion().size();
    IntMatrix lat(n, t);
    for (std::size_t k = 0; k < t; ++k)
        lat.at(static_cast<std::size_t>(g.free_rank()) + k, k) = g.torsion()[k];
    return lat;
}

// Generators of {z : M z lies in the relation lattice of target}, i.e. the
// vectors that the induced map kills, as matrix columns.
IntMatrix vanishing_lattice(const IntMatrix& m, const SLocalGroup& target) {
    IntMatrix lat = relation_lattice(target);
    IntMatrix stacked = m.augment_cols(lat.scaled(-1));
    IntMatrix ker = kernel_basis(stacked);
    IntMatrix out(m.cols(), ker.cols());
    for (std::size_t j = 0; j < ker.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) out.at(i, j) = ker.at(i, j);
    return out;
}

IntMatrix columns_as_rows(const IntMatrix& m) { return m.transpose(); }

} // namespace

SLocalGroup group_from_presentation(std::size_t generators, const IntMatrix& relations,
                                    const PrimeSet& s) {
    return quotient_presentation(generators, relations, s).group;
}

SLocalGroup subgroup_generated(const SLocalGroup& ambient, const IntMatrix& generators) {
    if (generators.rows() != ambient.generator_count())
        throw ValidationError("subgroup_generated: generator vectors have the wrong length");
    if (generators.cols() == 0) return SLocalGroup::trivial();
    IntMatrix relations = columns_as_rows(vanishing_lattice(generators, ambient));
    return quotient_presentation(generators.cols(), relations, ambient.inverted_primes()).group;
}

// --- tensor / tor -----------------------------------------------------------------

SLocalGroup tensor(const SLocalGroup& g, const SLocalGroup& h) {
    PrimeSet s = g.inverted_primes().united(h.inverted_primes());
    long free_rank = g.free_rank() * h.free_rank();
    std::vector<Int> torsion;
    for (long i = 0; i < g.free_rank(); ++i)
        for (const Int& e : h.torsion()) torsion.push_back(e);
    for (long i = 0; i < h.free_rank(); ++i)
        for (const Int& d : g.torsion()) torsion.push_back(d);
    for (const Int& d : g.torsion())
        for (const Int& e : h.torsion()) torsion.push_back(gcd(d, e));
    return SLocalGroup(free_rank, std::move(torsion), s);
}

SLocalGroup tor(const SLocalGroup& g, const SLocalGroup& h) {
    PrimeSet s = g.inverted_primes().united(h.inverted_primes());
    std::vector<Int> torsion;
    for (const Int& d : g.torsion())
        for (const Int& e : h.torsion()) torsion.push_back(gcd(d, e));
    return SLocalGroup(0, std::move(torsion), s);
}

// --- Hom / Ext ---------------------------------------------------------------------

namespace {

void require_integral(const SLocalGroup& g, const char* op) {
    if (!g.inverted_primes().empty())
        throw ValidationError(std::string(op) +
                              ": universal-coefficient input must be an integral group");
}

} // namespace

SLocalGroup hom_into(const SLocalGroup& g, const SLocalGroup& m) {
    require_integral(g, "hom_into");
    SLocalGroup result = SLocalGroup::trivial();
    for (long i = 0; i < g.free_rank(); ++i) result = direct_sum(result, m);
    std::vector<Int> torsion;
    for (const Int& d : g.torsion())
        for (const Int& e : m.torsion()) torsion.push_back(gcd(d, e)); // d-torsion of Z/e
    return direct_sum(result, SLocalGroup(0, std::move(torsion), m.inverted_primes()));
}

SLocalGroup ext_into(const SLocalGroup& g, const SLocalGroup& m) {
    require_integral(g, "ext_into");
    std::vector<Int> torsion;
    for (const Int& d : g.torsion()) {
        Int dd = strip_set(d, m.inverted_primes());
        for (long i = 0; i < m.free_rank(); ++i) torsion.push_back(dd); // Z_S / d Z_S
        for (const Int& e : m.torsion()) torsion.push_back(gcd(d, e)); // (Z/e) / d(Z/e)
    }
    return SLocalGroup(0, std::move(torsion), m.inverted_primes());
}

// --- kernel / cokernel ----------------------------------------------------------------

SLocalGroup cokernel_of(const GroupMap& f) {
    f.validate();
    // The S-unit denominator does not change the image subgroup, so present
    // target / (image columns + target relations) over the numerators.
    IntMatrix image_rows = f.matrix.transpose();
    IntMatrix lat_rows = columns_as_rows(relation_lattice(f.target));
    const std::size_t n = f.target.generator_count();
    IntMatrix all(image_rows.rows() + lat_rows.rows(), n);
    for (std::size_t i = 0; i < image_rows.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) all.at(i, j) = image_rows.at(i, j);
    for (std::size_t i = 0; i < lat_rows.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) all.at(image_rows.rows() + i, j) = lat_rows.at(i, j);
    return group_from_presentation(n, all, f.target.inverted_primes());
}

SLocalGroup kernel_of(const GroupMap& f) {
    f.validate();
    // The denominator is an S-unit of the target, so it never enlarges or
    // shrinks the set of vectors the map kills.
    IntMatrix gens = vanishing_lattice(f.matrix, f.target);
    return subgroup_generated(f.source, gens);
}

// --- colimits -----------------------------------------------------------------------

namespace {

Int invert_mod(const Int& a, const Int& n) {
    Int r;
    Int aa = ((a % n) + n) % n;
    if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), n.get_mpz_t()) == 0)
        throw InternalError("invert_mod: " + a.get_str() + " not invertible mod " + n.get_str());
    return r;
}

// Right inverse of a surjective integral matrix (all invariant factors 1).
IntMatrix right_inverse(const IntMatrix& p) {
    SmithDecomposition s = smith_normal_form(p);
    for (std::size_t i = 0; i < p.rows(); ++i)
        if (s.D.at(i, i) != 1) throw InternalError("right_inverse: matrix is not surjective");
    IntMatrix picker(p.cols(), p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) picker.at(i, i) = 1;
    return s.V * picker * s.U;
}

} // namespace

Colimit colimit_with_map(const SLocalGroup& g, const GroupMap& e) {
    if (!(e.source == g) || !(e.target == g))
        throw ValidationError("colimit_along: map is not an endomorphism of the given group");
    e.validate();

    const auto a = static_cast<std::size_t>(g.free_rank());
    const std::size_t t = g.torsion().size();

    // Free block: restrict to the stable sublattice (the saturated image of
    // the a-th power) so nilpotent directions die, then invert the primes
    // dividing the invariant factors of the restriction.
    PrimeSet s = g.inverted_primes();
    long colim_rank = 0;
    IntMatrix free_proj(0, a);
    if (a > 0) {
        IntMatrix block = e.matrix.submatrix(0, 0, a, a);
        IntMatrix stable = block.pow(static_cast<unsigned long>(a));
        std::size_t stable_rank = rank(stable);
        if (stable_rank > 0) {
            IntMatrix restricted = block;
            IntMatrix proj = IntMatrix::identity(a);
            if (stable_rank < a) {
                // Kernel lattices of integer matrices are saturated, so the
                // quotient Z^a / ker(stable) is free of rank stable_rank.
                IntMatrix ker = kernel_basis(stable);
                PresentedQuotient pq =
                    quotient_presentation(a, columns_as_rows(ker), PrimeSet{});
                if (!pq.group.is_torsion_free() ||
                    pq.group.free_rank() != static_cast<long>(stable_rank))
                    throw InternalError("colimit_along: stable quotient is not free");
                proj = pq.projection;
                IntMatrix rinv = right_inverse(proj);
                restricted = proj * block * rinv;
                if (!(restricted * proj == proj * block))
                    throw InternalError("colimit_along: endomorphism does not descend to the "
                                        "stable quotient");
            }
            for (const Int& f : smith_invariant_factors(restricted)) {
                if (f == 0) throw InternalError("colimit_along: stable restriction is singular");
                if (f > 1)
                    for (const Int& p : prime_factors(f)) s = s.united(PrimeSet::of({p}));
            }
            colim_rank = static_cast<long>(stable_rank);
            free_proj = proj;
        }
    }

    // Torsion block: clear the S-unit denominator coordinatewise, then iterate
    // until two successive images are isomorphic.
    SLocalGroup torsion_part(0, g.torsion(), {});
    SLocalGroup torsion_colim = SLocalGroup::trivial();
    IntMatrix torsion_proj(0, t);
    if (t > 0) {
        IntMatrix block(t, t);
        for (std::size_t i = 0; i < t; ++i) {
            Int order = g.torsion()[i];
            Int deninv = invert_mod(e.denominator, order);
            for (std::size_t j = 0; j < t; ++j) {
                Int v = (e.matrix.at(a + i, a + j) * deninv) % order;
                if (v < 0) v += order;
                block.at(i, j) = v;
            }
        }
        IntMatrix power = block;
        SLocalGroup prev = subgroup_generated(torsion_part, power);
        std::size_t steps = 1;
        const std::size_t cap = t + 64;
        for (;;) {
            IntMatrix next_power = block * power;
            SLocalGroup next = subgroup_generated(torsion_part, next_power);
            if (is_isomorphic(prev, next)) break;
            power = next_power;
            prev = next;
            if (++steps > cap)
                throw InternalError("colimit_along: torsion images failed to stabilize");
        }
        torsion_colim = prev;
        PresentedQuotient pq = quotient_presentation(
            t, columns_as_rows(vanishing_lattice(power, torsion_part)), PrimeSet{});
        if (!(pq.group == torsion_colim))
            throw InternalError("colimit_along: torsion presentation mismatch");
        torsion_proj = pq.projection;
    }

    SLocalGroup colim(colim_rank, torsion_colim.torsion(), s);
    IntMatrix phi(colim.generator_count(), g.generator_count());
    for (std::size_t i = 0; i < free_proj.rows(); ++i)
        for (std::size_t j = 0; j < a; ++j) phi.at(i, j) = free_proj.at(i, j);
    for (std::size_t i = 0; i < torsion_proj.rows(); ++i)
        for (std::size_t j = 0; j < t; ++j)
            phi.at(static_cast<std::size_t>(colim_rank) + i, a + j) = torsion_proj.at(i, j);
    GroupMap first{g, colim, std::move(phi), 1};
    first.validate();
    return {std::move(colim), std::move(first)};
}

SLocalGroup colimit_along(const SLocalGroup& g, const GroupMap& e) {
    return colimit_with_map(g, e).group;
}

bool is_isomorphic(const SLocalGroup& g, const SLocalGroup& h) { return g == h; }

} // namespace tdual::abgroup
