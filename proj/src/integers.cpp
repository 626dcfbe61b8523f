#include "tdual/integers.hpp"

#include "tdual/errors.hpp"

namespace tdual {

std::vector<Int> prime_factors(Int n) {
    std::vector<Int> out;
    n = abs(n);
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n && p < 100000; p = (p == 2 ? Int(3) : p + 2)) {
        if (divides(p, n)) {
            out.push_back(p);
            do { n /= p; } while (divides(p, n));
        }
    }
    if (n > 1) {
        if (!is_probable_prime(n))
            throw InternalError("prime_factors: remainder " + n.get_str() + " is composite");
        out.push_back(n);
    }
    return out;
}

Int strip_prime(Int n, const Int& p) {
    if (n == 0 || p <= 1) return n;
    while (divides(p, n)) n /= p;
    return n;
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace tdual
