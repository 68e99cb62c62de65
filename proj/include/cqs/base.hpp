#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqs {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// bad input (exit code 1 at the CLI)
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// a computation contradicted an invariant that should always hold
// (exit code 2 at the CLI: either a bug or a falsified theorem)
struct inconsistency_error : std::logic_error {
    explicit inconsistency_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw domain_error(msg);
}

inline void ensure(bool ok, const std::string& msg) {
    if (!ok) throw inconsistency_error(msg);
}

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

// representative of x mod n in [0, n-1], n > 0
inline Int mod_floor(const Int& x, const Int& n) {
    Int r = x % n;
    if (r < 0) r += n;
    return r;
}

// representative of x mod n in [1, n], n > 0
inline Int mod_1_to_n(const Int& x, const Int& n) {
    Int r = mod_floor(x, n);
    return r == 0 ? n : r;
}

// inverse of a mod n, gcd(a, n) = 1, result in [1, n-1]
inline Int mod_inverse(const Int& a, const Int& n) {
    Int r0 = n, r1 = mod_floor(a, n), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw domain_error("mod_inverse: arguments not coprime");
    return mod_floor(s0, n);
}

}  // namespace cqs
