#include "tdual/catalog.hpp"

#include "tdual/errors.hpp"

#include <sstream>

namespace tdual::catalog {

using abgroup::PrimeSet;
using abgroup::SLocalGroup;

// --- SupernaturalNumber --------------------------------------------------------

SupernaturalNumber SupernaturalNumber::of(std::vector<Int> primes) {
    if (primes.empty())
        throw ValidationError("SupernaturalNumber: support must be nonempty");
    return {PrimeSet::of(std::move(primes))};
}

SupernaturalNumber SupernaturalNumber::of_integer(const Int& n) {
    if (n < 2) throw ValidationError("SupernaturalNumber: integer must be >= 2");
    return {PrimeSet::of(prime_factors(n))};
}

SupernaturalNumber SupernaturalNumber::all() { return {PrimeSet::all()}; }

std::string SupernaturalNumber::str() const {
    if (support.is_all()) return "Q"; // universal UHF index
    Int m = 1;
    for (const Int& p : support.primes()) m *= p;
    return m.get_str() + "^inf";
}

// --- SSAlgebra -------------------------------------------------------------------

SSAlgebra SSAlgebra::complex() { return SSAlgebra(); }

SSAlgebra SSAlgebra::jiang_su() {
    SSAlgebra a;
    a.kind_ = AlgebraKind::JiangSu;
    return a;
}

SSAlgebra SSAlgebra::uhf(SupernaturalNumber n) {
    SSAlgebra a;
    a.kind_ = AlgebraKind::UHF;
    a.super_ = std::move(n);
    return a;
}

SSAlgebra SSAlgebra::cuntz2() {
    SSAlgebra a;
    a.kind_ = AlgebraKind::Cuntz2;
    return a;
}

SSAlgebra SSAlgebra::cuntz_inf() {
    SSAlgebra a;
    a.kind_ = AlgebraKind::CuntzInf;
    return a;
}

SSAlgebra SSAlgebra::uhf_tensor_oinf(SupernaturalNumber n) {
    SSAlgebra a;
    a.kind_ = AlgebraKind::UHFtensorOinf;
    a.super_ = std::move(n);
    return a;
}

SSAlgebra SSAlgebra::razak_jacelon() {
    SSAlgebra a;
    a.kind_ = AlgebraKind::RazakJacelon;
    return a;
}

SSAlgebra SSAlgebra::cuntz(int n) {
    if (n < 2) throw ValidationError("SSAlgebra: Cuntz index must be >= 2");
    if (n == 2) return cuntz2();
    SSAlgebra a;
    a.kind_ = AlgebraKind::CuntzN;
    a.cuntz_n_ = n;
    return a;
}

SSAlgebra SSAlgebra::mapping_torus_af(const Int& p, const Int& q) {
    if (p <= 0 || q <= 0) throw ValidationError("SSAlgebra: mapping torus parameters must be positive");
    Int g = gcd(p, q);
    SSAlgebra a;
    a.kind_ = AlgebraKind::MappingTorusAF;
    a.p_ = p / g;
    a.q_ = q / g;
    return a;
}

bool SSAlgebra::is_derived() const {
    return kind_ == AlgebraKind::CuntzN || kind_ == AlgebraKind::MappingTorusAF;
}

std::string SSAlgebra::str() const {
    switch (kind_) {
        case AlgebraKind::Complex: return "C";
        case AlgebraKind::JiangSu: return "Z";
        case AlgebraKind::UHF:
            return super_.is_all() ? "M_Q" : "M_" + super_.str();
        case AlgebraKind::Cuntz2: return "O2";
        case AlgebraKind::CuntzInf: return "Oinf";
        case AlgebraKind::UHFtensorOinf:
            return (super_.is_all() ? std::string("M_Q") : "M_" + super_.str()) + " (x) Oinf";
        case AlgebraKind::RazakJacelon: return "W";
        case AlgebraKind::CuntzN: return "O" + std::to_string(cuntz_n_);
        case AlgebraKind::MappingTorusAF:
            return "MappingTorusAF(" + p_.get_str() + "," + q_.get_str() + ")";
    }
    return "?";
}

std::string KPair::str() const { return "(" + k0.str() + ", " + k1.str() + ")"; }

// --- tensor table ------------------------------------------------------------------

namespace {

// The catalog under (x) is a join-semilattice:
//
//   C < Z < { UHF(S) ordered by support; Oinf; UHF(S)(x)Oinf } ,
//   UHF(S) < W for every S,   everything < O2.
//
// Joins reproduce the absorption table: UHF supports unite, UHF join Oinf is
// UHF(x)Oinf, W absorbs every UHF, and the purely infinite joins of W land
// in O2. Join-semilattices are automatically commutative, associative and
// idempotent, which the property suite asserts over the whole catalog.
struct Label {
    int level = 0;       // 0 = C, 1 = Z, 2 = UHF/Oinf layer, 3 = W, 4 = O2
    bool has_uhf = false;
    bool has_oinf = false;
    SupernaturalNumber super;
};

Label label_of(const SSAlgebra& a) {
    switch (a.kind()) {
        case AlgebraKind::Complex: return {0, false, false, {}};
        case AlgebraKind::JiangSu: return {1, false, false, {}};
        case AlgebraKind::UHF: return {2, true, false, a.supernatural()};
        case AlgebraKind::CuntzInf: return {2, false, true, {}};
        case AlgebraKind::UHFtensorOinf: return {2, true, true, a.supernatural()};
        case AlgebraKind::RazakJacelon: return {3, false, false, {}};
        case AlgebraKind::Cuntz2: return {4, false, false, {}};
        default:
            throw UnsupportedError("tensor_ssa: no table entry for derived constant " + a.str());
    }
}

SSAlgebra algebra_of(const Label& l) {
    switch (l.level) {
        case 0: return SSAlgebra::complex();
        case 1: return SSAlgebra::jiang_su();
        case 2:
            if (l.has_uhf && l.has_oinf) return SSAlgebra::uhf_tensor_oinf(l.super);
            if (l.has_uhf) return SSAlgebra::uhf(l.super);
            return SSAlgebra::cuntz_inf();
        case 3: return SSAlgebra::razak_jacelon();
        default: return SSAlgebra::cuntz2();
    }
}

} // namespace

SSAlgebra tensor_ssa(const SSAlgebra& a, const SSAlgebra& b) {
    Label la = label_of(a);
    Label lb = label_of(b);
    if (la.level == 4 || lb.level == 4) return SSAlgebra::cuntz2();
    if (la.level < lb.level) std::swap(la, lb);
    if (lb.level <= 1) return algebra_of(la); // C is the unit, Z absorbs into everything
    if (la.level == 3) {
        // W absorbs Z and every UHF of infinite type; joined with anything
        // O_inf-absorbing the result is purely infinite, i.e. O2 here.
        if (lb.level == 3 || !lb.has_oinf) return SSAlgebra::razak_jacelon();
        return SSAlgebra::cuntz2();
    }
    // both in the UHF / Oinf layer
    Label join;
    join.level = 2;
    join.has_uhf = la.has_uhf || lb.has_uhf;
    join.has_oinf = la.has_oinf || lb.has_oinf;
    if (la.has_uhf && lb.has_uhf)
        join.super = {la.super.support.united(lb.super.support)};
    else
        join.super = la.has_uhf ? la.super : lb.super;
    return algebra_of(join);
}

// --- K-theory table ------------------------------------------------------------------

std::optional<KPair> k_theory_ssa(const SSAlgebra& a) {
    switch (a.kind()) {
        case AlgebraKind::Complex:
        case AlgebraKind::JiangSu:
        case AlgebraKind::CuntzInf:
            return KPair{SLocalGroup::free(1), SLocalGroup::trivial()};
        case AlgebraKind::UHF:
        case AlgebraKind::UHFtensorOinf:
            return KPair{SLocalGroup::free(1, a.supernatural().support), SLocalGroup::trivial()};
        case AlgebraKind::Cuntz2:
        case AlgebraKind::RazakJacelon:
            return KPair{SLocalGroup::trivial(), SLocalGroup::trivial()};
        case AlgebraKind::CuntzN:
            return KPair{SLocalGroup::cyclic(a.cuntz_index() - 1), SLocalGroup::trivial()};
        case AlgebraKind::MappingTorusAF:
            return std::nullopt;
    }
    return std::nullopt;
}

UnitsGroup units_positive(const SSAlgebra& a) {
    UnitsGroup u;
    switch (a.kind()) {
        case AlgebraKind::Complex:
        case AlgebraKind::JiangSu:
        case AlgebraKind::Cuntz2:
            return u; // trivial
        case AlgebraKind::RazakJacelon:
            u.assumption_notes.push_back(
                "assumption: positive-unit group of W taken trivial (K0(W) = 0)");
            return u;
        case AlgebraKind::CuntzInf:
            u.assumption_notes.push_back(
                "assumption: positive-unit group of Oinf taken trivial; the underlying "
                "positivity convention does not pin the table row down");
            return u;
        case AlgebraKind::UHF:
        case AlgebraKind::UHFtensorOinf: {
            const SupernaturalNumber& n = a.supernatural();
            if (n.is_all()) {
                u.symbolic_infinite = true;
                return u;
            }
            u.group = SLocalGroup::free(static_cast<long>(n.support.primes().size()));
            for (const Int& p : n.support.primes()) u.generator_names.push_back(p.get_str());
            if (a.kind() == AlgebraKind::UHFtensorOinf)
                u.assumption_notes.push_back(
                    "assumption: positive-unit group of " + a.str() +
                    " taken free abelian on the supernatural support");
            return u;
        }
        default:
            throw UnsupportedError("units_positive: no table entry for derived constant " +
                                   a.str());
    }
}

bool is_purely_infinite(const SSAlgebra& a) {
    switch (a.kind()) {
        case AlgebraKind::Cuntz2:
        case AlgebraKind::CuntzInf:
        case AlgebraKind::UHFtensorOinf:
        case AlgebraKind::CuntzN:
            return true;
        default:
            return false;
    }
}

bool is_stably_finite(const SSAlgebra& a) { return !is_purely_infinite(a); }

bool absorbs_uhf_of_infinite_type(const SSAlgebra& a) {
    switch (a.kind()) {
        case AlgebraKind::UHF:
        case AlgebraKind::UHFtensorOinf:
        case AlgebraKind::Cuntz2:
        case AlgebraKind::RazakJacelon:
            return true;
        default:
            return false;
    }
}

SSAlgebra parse_algebra(const std::string& name) {
    if (name == "C") return SSAlgebra::complex();
    if (name == "Z") return SSAlgebra::jiang_su();
    if (name == "O2") return SSAlgebra::cuntz2();
    if (name == "Oinf") return SSAlgebra::cuntz_inf();
    if (name == "W") return SSAlgebra::razak_jacelon();
    auto parse_supernatural = [](const std::string& spec) {
        if (spec == "ALL") return SupernaturalNumber::all();
        std::vector<Int> primes;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw ValidationError("fiber name: empty supernatural entry");
            Int n(tok);
            if (n < 2) throw ValidationError("fiber name: supernatural entry must be >= 2");
            for (const Int& p : prime_factors(n)) primes.push_back(p);
        }
        if (primes.empty()) throw ValidationError("fiber name: empty supernatural support");
        return SupernaturalNumber::of(std::move(primes));
    };
    const std::string uhf_prefix = "UHF:";
    if (name.rfind(uhf_prefix, 0) == 0) {
        std::string rest = name.substr(uhf_prefix.size());
        const std::string oinf_suffix = "*Oinf";
        if (rest.size() > oinf_suffix.size() &&
            rest.compare(rest.size() - oinf_suffix.size(), oinf_suffix.size(), oinf_suffix) == 0)
            return SSAlgebra::uhf_tensor_oinf(
                parse_supernatural(rest.substr(0, rest.size() - oinf_suffix.size())));
        return SSAlgebra::uhf(parse_supernatural(rest));
    }
    throw ValidationError("unknown fiber algebra name: " + name);
}

} // namespace tdual::catalog
