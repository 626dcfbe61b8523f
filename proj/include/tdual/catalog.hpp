#pragma once

#include "tdual/abgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tdual::catalog {

// Supernatural number of infinite type: exponents are infinite on the
// support and zero elsewhere. ALL indexes the universal UHF algebra.
struct SupernaturalNumber {
    abgroup::PrimeSet support;

    static SupernaturalNumber of(std::vector<Int> primes);
    static SupernaturalNumber of_integer(const Int& n); // support = primes of n
    static SupernaturalNumber all();

    bool is_all() const { return support.is_all(); }
    bool operator==(const SupernaturalNumber& other) const = default;
    std::string str() const;
};

enum class AlgebraKind {
    Complex,        // C
    JiangSu,        // Z
    UHF,            // M_{n^inf}, infinite type
    Cuntz2,         // O_2
    CuntzInf,       // O_inf
    UHFtensorOinf,  // M_{n^inf} (x) O_inf
    RazakJacelon,   // W (nonunital)
    CuntzN,         // O_n, n >= 3; rewrite output only (O_2 is its own variant)
    MappingTorusAF, // mapping torus of the AF algebra attached to (p, q); rewrite output only
};

// One entry of the classifiable-fiber table, plus the derived constants the
// rewrite system can produce.
class SSAlgebra {
public:
    static SSAlgebra complex();
    static SSAlgebra jiang_su();
    static SSAlgebra uhf(SupernaturalNumber n);
    static SSAlgebra cuntz2();
    static SSAlgebra cuntz_inf();
    static SSAlgebra uhf_tensor_oinf(SupernaturalNumber n);
    static SSAlgebra razak_jacelon();
    static SSAlgebra cuntz(int n);                 // canonicalizes O_2 to the Cuntz2 variant
    static SSAlgebra mapping_torus_af(const Int& p, const Int& q);

    AlgebraKind kind() const { return kind_; }
    const SupernaturalNumber& supernatural() const { return super_; }
    int cuntz_index() const { return cuntz_n_; }
    const Int& mt_p() const { return p_; }
    const Int& mt_q() const { return q_; }

    // Derived constants (CuntzN, MappingTorusAF) have no table row; they are
    // only admitted as rewrite outputs.
    bool is_derived() const;
    bool is_unital() const { return kind_ != AlgebraKind::RazakJacelon; }

    bool operator==(const SSAlgebra& other) const = default;
    bool operator<(const SSAlgebra& other) const { return str() < other.str(); }
    std::string str() const;

private:
    AlgebraKind kind_ = AlgebraKind::Complex;
    SupernaturalNumber super_;
    int cuntz_n_ = 0;
    Int p_ = 0, q_ = 0;
};

struct KPair {
    abgroup::SLocalGroup k0;
    abgroup::SLocalGroup k1;

    bool operator==(const KPair& other) const = default;
    std::string str() const;
};

// Table-driven tensor product over the catalog. Commutative, associative and
// idempotent; derived constants have no entry and are rejected.
SSAlgebra tensor_ssa(const SSAlgebra& a, const SSAlgebra& b);

// (K0, K1) of the stabilized algebra. MappingTorusAF is deliberately left
// unevaluated (nullopt) and surfaces as such in K-theory reports.
std::optional<KPair> k_theory_ssa(const SSAlgebra& a);

// Group of positive units of K0, the coefficient group of the H^1 factor in
// the bundle classification.
struct UnitsGroup {
    abgroup::SLocalGroup group;
    std::vector<std::string> generator_names;
    // Free abelian on every prime: infinitely generated, never usable as a
    // cohomology coefficient group.
    bool symbolic_infinite = false;
    // Table rows the underlying theory does not pin down; propagated into
    // reports so defaults are never used silently.
    std::vector<std::string> assumption_notes;
};
UnitsGroup units_positive(const SSAlgebra& a);

bool is_purely_infinite(const SSAlgebra& a);
bool is_stably_finite(const SSAlgebra& a);

// True when a (x) M_{p^inf} = a for some prime p; the class of fibers that
// admits spectrum-fixing integer actions with vanishing Rokhlin dimension.
bool absorbs_uhf_of_infinite_type(const SSAlgebra& a);

// Scenario-file names: "C", "Z", "UHF:2", "UHF:2,3", "O2", "Oinf",
// "UHF:2*Oinf", "W", "UHF:ALL".
SSAlgebra parse_algebra(const std::string& name);

} // namespace tdual::catalog
