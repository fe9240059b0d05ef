#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "grassjac/rng.hpp"

namespace grassjac {

// Arbitrary-precision rational, always kept canonical by GMP:
// positive denominator, gcd(num, den) = 1.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline BigInt rat_num(const Rational& q) { return numerator(q); }
inline BigInt rat_den(const Rational& q) { return denominator(q); }

inline std::string rat_str(const Rational& q) { return q.str(); }

inline Rational rat_parse(const std::string& s) { return Rational(s); }

// small random rational: integer numerator in [-bound, bound] \ {0}
inline Rational random_small_rational(Rng& rng, std::int64_t bound = 9) {
    std::int64_t n = 0;
    while (n == 0) n = rng.range(-bound, bound);
    return Rational(n);
}

// Exact arithmetic over Q behind the shared field interface used by all
// linear algebra in this library (see fp.hpp for the prime-field twin).
struct RationalField {
    using Elem = Rational;

    static constexpr bool is_prime_field = false;

    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const { return 1 / a; }
    Elem from_int(std::int64_t n) const { return Rational(n); }
    Elem from_rational(const Rational& q) const { return q; }
    std::string str(const Elem& a) const { return a.str(); }
    std::string name() const { return "Q"; }
};

} // namespace grassjac
