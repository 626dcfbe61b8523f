#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tdual {

// All arithmetic in the engine is exact. Int is arbitrary precision;
// Rat is used for trace-scaling factors and quasi-free parameters.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

// Prime factorization by trial division with a primality check on the
// remainder. Torsion orders and supernatural supports stay small here, so
// this never has to factor anything hard.
std::vector<Int> prime_factors(Int n);

// Removes every power of p from n.
Int strip_prime(Int n, const Int& p);

std::string to_string(const Int& n);
std::string to_string(const Rat& q);

} // namespace tdual
