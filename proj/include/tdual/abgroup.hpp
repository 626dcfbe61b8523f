#pragma once

#include "tdual/matrix.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tdual::abgroup {

// Set of inverted primes. ALL stands in for "every prime" and turns the
// free part into Q; it never carries torsion.
class PrimeSet {
public:
    PrimeSet() = default;
    static PrimeSet all();
    static PrimeSet of(std::vector<Int> primes); // validates primality

    bool is_all() const { return all_; }
    bool empty() const { return !all_ && primes_.empty(); }
    bool contains(const Int& p) const;
    const std::vector<Int>& primes() const { return primes_; }

    PrimeSet united(const PrimeSet& other) const;
    bool operator==(const PrimeSet& other) const = default;
    bool operator<(const PrimeSet& other) const;

    std::string str() const;

private:
    bool all_ = false;
    std::vector<Int> primes_; // sorted, unique
};

// Finitely generated abelian group localized at a set of primes S:
//   Z_S^free_rank  (+)  Z/d_1 (+) ... (+) Z/d_k,   d_1 | d_2 | ... | d_k,
// every d_i coprime to S. Canonicalized on construction; a trivial group
// carries S = {} and Q-coefficients (S = ALL) carry no torsion.
class SLocalGroup {
public:
    SLocalGroup() = default; // trivial group
    SLocalGroup(long free_rank, std::vector<Int> torsion, PrimeSet inverted);

    static SLocalGroup trivial() { return SLocalGroup(); }
    static SLocalGroup free(long rank, PrimeSet s = {});
    static SLocalGroup cyclic(const Int& n); // n >= 1; n == 1 gives the trivial group
    static SLocalGroup rationals(long rank = 1) { return free(rank, PrimeSet::all()); }

    long free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    const PrimeSet& inverted_primes() const { return inverted_; }

    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_torsion_free() const { return torsion_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }

    // Generator convention everywhere in the engine: free generators first,
    // then torsion generators in invariant-factor order.
    std::size_t generator_count() const { return static_cast<std::size_t>(free_rank_) + torsion_.size(); }

    // Order of the torsion generator backing coordinate i (free -> 0).
    Int relation_order(std::size_t i) const;

    bool operator==(const SLocalGroup& other) const = default;

    // Canonical print: free part first ("Z^r" with "[1/m]" suffix or "Q"),
    // then invariant factors ascending; "0" for the trivial group.
    std::string str() const;

private:
    long free_rank_ = 0;
    std::vector<Int> torsion_;
    PrimeSet inverted_;
};

SLocalGroup direct_sum(const SLocalGroup& a, const SLocalGroup& b);

// Homomorphism between S-local groups. Entries live in the target's
// localization: numerator matrix over Z plus one S-unit denominator.
struct GroupMap {
    SLocalGroup source;
    SLocalGroup target;
    IntMatrix matrix; // target.generator_count() x source.generator_count()
    Int denominator = 1;

    static GroupMap identity(const SLocalGroup& g);
    static GroupMap scalar(const SLocalGroup& g, const Int& num, const Int& den = 1);
    static GroupMap zero(const SLocalGroup& source, const SLocalGroup& target);

    // Checks that the matrix respects the source relations inside the target.
    void validate() const;
    bool is_identity() const;
};

// --- module operations ------------------------------------------------------

// Cokernel of `relations` acting on Z^generators, localized at s.
SLocalGroup group_from_presentation(std::size_t generators, const IntMatrix& relations,
                                    const PrimeSet& s);

SLocalGroup tensor(const SLocalGroup& g, const SLocalGroup& h);
SLocalGroup tor(const SLocalGroup& g, const SLocalGroup& h);

// Universal-coefficient ingredients. g must be integral (S = {}).
SLocalGroup hom_into(const SLocalGroup& g, const SLocalGroup& m);
SLocalGroup ext_into(const SLocalGroup& g, const SLocalGroup& m);

// Sequential colimit of g -> g -> g -> ... along the endomorphism e.
// Free part: localize at the primes dividing the invariant factors of the
// stable restriction of e; torsion: iterate until the image stabilizes.
SLocalGroup colimit_along(const SLocalGroup& g, const GroupMap& e);

// Colimit together with the canonical map of the first stage into it.
struct Colimit {
    SLocalGroup group;
    GroupMap first_stage;
};
Colimit colimit_with_map(const SLocalGroup& g, const GroupMap& e);

bool is_isomorphic(const SLocalGroup& g, const SLocalGroup& h);

// Isomorphism type of the subgroup of `ambient` generated by the columns of
// `generators` (coordinates in ambient's generator basis, integral entries).
SLocalGroup subgroup_generated(const SLocalGroup& ambient, const IntMatrix& generators);

SLocalGroup kernel_of(const GroupMap& f);
SLocalGroup cokernel_of(const GroupMap& f);

} // namespace tdual::abgroup
