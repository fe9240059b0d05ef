#pragma once

#include <cstdint>
#include <string>

#include "grassjac/errors.hpp"
#include "grassjac/rational.hpp"
#include "grassjac/rng.hpp"

namespace grassjac {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// deterministic Miller-Rabin, valid for all n < 2^64
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

// deterministic "random" 62-bit prime from a seeded stream
inline std::uint64_t random_prime62(Rng& rng) {
    for (;;) {
        std::uint64_t c = (rng.next_u64() >> 2) | (1ull << 61) | 1ull;
        if (detail::is_prime_u64(c)) return c;
    }
}

// Z/p for a prime p of ~62 bits. Elements live in Montgomery form
// (R = 2^64); all hot loops reduce lazily through REDC.
class FpField {
public:
    using Elem = std::uint64_t;

    static constexpr bool is_prime_field = true;

    explicit FpField(std::uint64_t p) : p_(p) {
        if (!detail::is_prime_u64(p) || (p & 1) == 0) {
            throw Error(ErrorCode::oracle_mismatch, "FpField: modulus must be an odd prime");
        }
        // -p^{-1} mod 2^64 by Newton iteration
        std::uint64_t inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        pinv_ = ~inv + 1; // = -inv
        r2_ = static_cast<std::uint64_t>((detail::u128)(~0ull % p + 1) * (~0ull % p + 1) % p);
        // r2_ = (2^64 mod p)^2 mod p = 2^128 mod p
        one_ = redc(r2_); // R mod p
    }

    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return one_; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const {
        std::uint64_t s = a + b;
        if (s >= p_ || s < a) s -= p_;
        return s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return redc((detail::u128)a * b); }

    Elem inv(Elem a) const {
        if (a == 0) throw Error(ErrorCode::internal_inconsistency, "FpField: inverse of zero");
        return pow(a, p_ - 2);
    }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = one_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elem from_int(std::int64_t n) const {
        std::uint64_t v = n >= 0 ? static_cast<std::uint64_t>(n) % p_
                                 : p_ - (static_cast<std::uint64_t>(-(n + 1)) + 1) % p_;
        if (v == p_) v = 0;
        return to_mont(v);
    }

    // reduces an exact rational mod p; a denominator divisible by p is the
    // "unlucky prime" case and must abort rather than silently corrupt ranks
    Elem from_rational(const Rational& q) const {
        const auto* mq = q.backend().data();
        std::uint64_t den = mpz_fdiv_ui(mpq_denref(mq), p_);
        if (den == 0) throw UnluckyPrimeError("denominator divisible by p=" + std::to_string(p_));
        std::uint64_t num = mpz_fdiv_ui(mpq_numref(mq), p_);
        return mul(to_mont(num), inv(to_mont(den)));
    }

    // canonical residue in [0, p)
    std::uint64_t to_residue(Elem a) const { return redc(a); }
    Elem from_residue(std::uint64_t v) const { return to_mont(v % p_); }

    std::string str(Elem a) const { return std::to_string(to_residue(a)); }
    std::string name() const { return "F_" + std::to_string(p_); }

private:
    std::uint64_t redc(detail::u128 t) const {
        std::uint64_t m = static_cast<std::uint64_t>(t) * pinv_;
        detail::u128 s = t + (detail::u128)m * p_;
        std::uint64_t r = static_cast<std::uint64_t>(s >> 64);
        return r >= p_ ? r - p_ : r;
    }
    Elem to_mont(std::uint64_t v) const { return redc((detail::u128)v * r2_); }

    std::uint64_t p_, pinv_, r2_, one_;
};

} // namespace grassjac
