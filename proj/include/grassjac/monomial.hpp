#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grassjac/errors.hpp"

namespace grassjac {

// Exponent vector over a fixed ordered variable list.
struct Monomial {
    std::vector<std::uint8_t> e;

    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }

    static Monomial one(std::size_t nvars) {
        Monomial m;
        m.e.assign(nvars, 0);
        return m;
    }

    static Monomial var(std::size_t nvars, std::size_t i, std::uint8_t k = 1) {
        Monomial m = one(nvars);
        m.e[i] = k;
        return m;
    }

    Monomial times(const Monomial& o) const {
        Monomial m = *this;
        for (std::size_t i = 0; i < e.size(); ++i)
            m.e[i] = static_cast<std::uint8_t>(m.e[i] + o.e[i]);
        return m;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }

    // graded order, then ascending lex on exponent vectors; the canonical
    // *basis* order of a fixed degree is the reverse of this (leading
    // variable powers first)
    bool operator<(const Monomial& o) const {
        const int da = degree(), db = o.degree();
        if (da != db) return da < db;
        return e < o.e;
    }
};

inline std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return static_cast<std::uint64_t>(r);
}

// count of monomials of degree d in v variables
inline std::uint64_t monomial_count(std::size_t v, std::size_t d) {
    if (v == 0) return d == 0 ? 1 : 0;
    return binom_u64(d + v - 1, v - 1);
}

// The ordered monomial basis of one degree: descending lexicographic
// exponent order (all of x_0^d first block, ..., x_{v-1}^d last).
class MonomialBasis {
public:
    MonomialBasis(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {
        if (nvars == 0 || nvars > 64 || degree < 0 || degree > 255)
            throw Error(ErrorCode::internal_inconsistency, "monomial basis: bad parameters");
        const std::uint64_t n = monomial_count(nvars, static_cast<std::size_t>(degree));
        exps_.reserve(n * nvars_);
        std::vector<std::uint8_t> cur(nvars_, 0);
        emit(cur, 0, degree);
        count_ = exps_.size() / nvars_;
        if (count_ != n)
            throw Error(ErrorCode::internal_inconsistency, "monomial basis enumeration mismatch");
    }

    std::size_t size() const { return count_; }
    std::size_t nvars() const { return nvars_; }
    int degree() const { return degree_; }

    const std::uint8_t* exps(std::size_t i) const { return exps_.data() + i * nvars_; }

    Monomial monomial(std::size_t i) const {
        Monomial m;
        m.e.assign(exps(i), exps(i) + nvars_);
        return m;
    }

    // position of an exponent vector in this basis
    std::size_t rank(const std::uint8_t* e) const {
        std::uint64_t r = 0;
        int rem = degree_;
        for (std::size_t i = 0; i + 1 < nvars_; ++i) {
            const std::size_t tail = nvars_ - i - 1;
            // monomials whose i-th exponent exceeds e[i] come first
            for (int t = rem; t > e[i]; --t) r += monomial_count(tail, static_cast<std::size_t>(rem - t));
            rem -= e[i];
        }
        return static_cast<std::size_t>(r);
    }

    std::size_t rank(const Monomial& m) const {
        if (m.degree() != degree_)
            throw Error(ErrorCode::internal_inconsistency, "monomial rank: degree mismatch");
        return rank(m.e.data());
    }

    // rank of the product of two lower-degree monomials
    std::size_t rank_sum(const std::uint8_t* a, const std::uint8_t* b) const {
        std::uint8_t s[64];
        for (std::size_t i = 0; i < nvars_; ++i) s[i] = static_cast<std::uint8_t>(a[i] + b[i]);
        return rank(s);
    }

private:
    void emit(std::vector<std::uint8_t>& cur, std::size_t pos, int rem) {
        if (pos + 1 == nvars_) {
            cur[pos] = static_cast<std::uint8_t>(rem);
            exps_.insert(exps_.end(), cur.begin(), cur.end());
            return;
        }
        for (int t = rem; t >= 0; --t) {
            cur[pos] = static_cast<std::uint8_t>(t);
            emit(cur, pos + 1, rem - t);
        }
    }

    std::size_t nvars_;
    int degree_;
    std::size_t count_ = 0;
    std::vector<std::uint8_t> exps_;
};

// spec'd operation: all monomials of degree d over `nvars` variables in
// basis order
inline std::vector<Monomial> graded_basis(std::size_t nvars, int d) {
    if (d < 0) throw Error(ErrorCode::internal_inconsistency, "graded_basis: negative degree");
    MonomialBasis b(nvars, d);
    std::vector<Monomial> out;
    out.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b.monomial(i));
    return out;
}

} // namespace grassjac
