#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grassjac/monomial.hpp"
#include "grassjac/rational.hpp"

namespace grassjac {

// Sparse multivariate polynomial over Q. All ring data that the paper-level
// objects carry (sections, relation generators, chart minors) is rational;
// prime-field images are taken only at the linear-algebra layer.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::size_t nvars) : nvars_(nvars) {}

    static QPoly constant(std::size_t nvars, const Rational& c) {
        QPoly f(nvars);
        if (!c.is_zero()) f.terms_[Monomial::one(nvars)] = c;
        return f;
    }

    static QPoly variable(std::size_t nvars, std::size_t i) {
        QPoly f(nvars);
        f.terms_[Monomial::var(nvars, i)] = 1;
        return f;
    }

    static QPoly term(std::size_t nvars, const Monomial& m, const Rational& c) {
        QPoly f(nvars);
        if (!c.is_zero()) f.terms_[m] = c;
        return f;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    // total degree; -1 for the zero polynomial
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    bool homogeneous_of(int d) const {
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    QPoly& operator+=(const QPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    QPoly& operator-=(const QPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    QPoly operator+(const QPoly& o) const {
        QPoly r = *this;
        r += o;
        return r;
    }
    QPoly operator-(const QPoly& o) const {
        QPoly r = *this;
        r -= o;
        return r;
    }

    QPoly scaled(const Rational& c) const {
        QPoly r(nvars_);
        if (c.is_zero()) return r;
        for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
        return r;
    }

    bool operator==(const QPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

private:
    std::size_t nvars_ = 0;
    std::map<Monomial, Rational> terms_;
};

inline QPoly mul(const QPoly& f, const QPoly& g) {
    QPoly r(f.nvars());
    for (const auto& [mf, cf] : f.terms())
        for (const auto& [mg, cg] : g.terms()) r.add_term(mf.times(mg), cf * cg);
    return r;
}

inline QPoly pow(const QPoly& f, int k) {
    QPoly r = QPoly::constant(f.nvars(), 1);
    for (int i = 0; i < k; ++i) r = mul(r, f);
    return r;
}

inline QPoly derivative(const QPoly& f, std::size_t var) {
    QPoly r(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        if (m.e[var] == 0) continue;
        Monomial d = m;
        d.e[var] = static_cast<std::uint8_t>(d.e[var] - 1);
        r.add_term(d, c * m.e[var]);
    }
    return r;
}

inline Rational evaluate(const QPoly& f, const std::vector<Rational>& point) {
    if (point.size() != f.nvars())
        throw Error(ErrorCode::internal_inconsistency, "evaluate: point length mismatch");
    Rational total = 0;
    for (const auto& [m, c] : f.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (int k = 0; k < m.e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

// A degree-e twisted derivation of the coordinate ring: the image of each
// variable, all homogeneous of degree e + 1 (or zero).
struct Derivation {
    std::vector<QPoly> images;
    int twist = 0;

    static Derivation from_images(std::vector<QPoly> imgs) {
        Derivation d;
        d.images = std::move(imgs);
        int deg = -1;
        for (const auto& f : d.images) {
            if (f.is_zero()) continue;
            if (deg < 0) deg = f.degree();
            if (!f.homogeneous_of(deg))
                throw Error(ErrorCode::internal_inconsistency,
                            "derivation images must be homogeneous of a common degree");
        }
        d.twist = (deg < 0) ? 0 : deg - 1;
        return d;
    }

    static Derivation euler(std::size_t nvars) {
        std::vector<QPoly> imgs;
        imgs.reserve(nvars);
        for (std::size_t i = 0; i < nvars; ++i) imgs.push_back(QPoly::variable(nvars, i));
        return from_images(std::move(imgs));
    }
};

inline QPoly apply_derivation(const Derivation& d, const QPoly& f) {
    QPoly r(f.nvars());
    for (std::size_t i = 0; i < d.images.size(); ++i) {
        if (d.images[i].is_zero()) continue;
        r += mul(d.images[i], derivative(f, i));
    }
    return r;
}

// ---------------------------------------------------------------------------
// fixture text format: `coeff*var^e*var^e` terms joined by `+`;
// round-trips exactly through parse_poly(poly_to_string(f)).

struct VarTable {
    std::vector<std::string> names;

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }
};

inline std::string poly_to_string(const QPoly& f, const VarTable& vars) {
    if (f.is_zero()) return "0";
    std::string out;
    // leading monomials first
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (!out.empty()) out += " + ";
        out += rat_str(c);
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            out += "*" + vars.names[i];
            if (m.e[i] > 1) out += "^" + std::to_string(static_cast<int>(m.e[i]));
        }
    }
    return out;
}

namespace poly_detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

} // namespace poly_detail

inline QPoly parse_poly(const std::string& s, const VarTable& vars) {
    QPoly out(vars.names.size());
    std::size_t i = 0;
    poly_detail::skip_ws(s, i);
    if (i < s.size() && s.compare(i, 1, "0") == 0 && i + 1 == s.size()) return out;
    bool expect_term = true;
    while (i < s.size()) {
        if (!expect_term) {
            poly_detail::skip_ws(s, i);
            if (i >= s.size()) break;
            if (s[i] != '+')
                throw Error(ErrorCode::internal_inconsistency,
                            "poly parse: expected '+' at position " + std::to_string(i));
            ++i;
        }
        poly_detail::skip_ws(s, i);
        // coefficient: optional sign, digits, optional /den
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        if (i == start)
            throw Error(ErrorCode::internal_inconsistency,
                        "poly parse: expected coefficient at position " + std::to_string(start));
        Rational coeff = rat_parse(s.substr(start, i - start));
        Monomial m = Monomial::one(vars.names.size());
        while (true) {
            poly_detail::skip_ws(s, i);
            if (i >= s.size() || s[i] != '*') break;
            ++i;
            poly_detail::skip_ws(s, i);
            std::size_t vstart = i;
            // a variable name runs to the closing '}' of its subscript
            while (i < s.size() && s[i] != '}') ++i;
            if (i >= s.size())
                throw Error(ErrorCode::internal_inconsistency, "poly parse: unterminated variable name");
            ++i;
            const std::string name = s.substr(vstart, i - vstart);
            auto vi = vars.index_of(name);
            if (!vi)
                throw Error(ErrorCode::internal_inconsistency, "poly parse: unknown variable " + name);
            int exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t estart = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                exp = std::stoi(s.substr(estart, i - estart));
            }
            m.e[*vi] = static_cast<std::uint8_t>(m.e[*vi] + exp);
        }
        out.add_term(m, coeff);
        expect_term = false;
        poly_detail::skip_ws(s, i);
    }
    return out;
}

} // namespace grassjac
