#pragma once

#include "grassjac/grassmann.hpp"

namespace grassjac {

// Query h^i(G, Omega^p(m)).
struct CohomologyQuery {
    int p = 0; // form degree, 0..N
    int i = 0; // cohomology degree, 0..N
    int m = 0; // twist
};

struct OracleVerdict {
    enum class Kind { zero, dimension, unknown } kind = Kind::unknown;
    std::uint64_t dim = 0;

    static OracleVerdict zero() { return {Kind::zero, 0}; }
    static OracleVerdict dimension(std::uint64_t d) { return {Kind::dimension, d}; }
    static OracleVerdict unknown() { return {Kind::unknown, 0}; }

    bool is_zero() const { return kind == Kind::zero; }
    bool is_unknown() const { return kind == Kind::unknown; }

    std::string str() const {
        switch (kind) {
            case Kind::zero: return "0";
            case Kind::dimension: return std::to_string(dim);
            default: return "?";
        }
    }
};

// Tri-state vanishing oracle. Encodes only the rules the computations lean
// on, with Unknown as the default: a wrong Zero would silently corrupt the
// dimension cross-checks downstream.
//   (R1) h^i(Omega^p(m)) = 0 for i >= 1, m > l
//   (R2) Serre duality h^i(Omega^p(m)) = h^{N-i}(Omega^{N-p}(-m)), using
//        K = O(-l-1); applied to re-run R1/R3 on the dual query
//   (R3) Kodaira: i >= 1 and the bundle is K tensor a positive twist, i.e.
//        p = N with m > 0, or p = 0 with m >= -l
// plus the h^0 closed forms backed by the Weyl-dimension formula.
inline OracleVerdict vanishing(const GrassCtx& ctx, const CohomologyQuery& q) {
    const int N = ctx.dim(), l = ctx.l();
    if (q.p < 0 || q.p > N || q.i < 0 || q.i > N)
        throw Error(ErrorCode::hypothesis_violation, "cohomology query out of range");

    if (q.i == 0) {
        if (q.p == 0) {
            if (q.m < 0) return OracleVerdict::zero();
            return OracleVerdict::dimension(ctx.weyl(q.m));
        }
        return OracleVerdict::unknown();
    }

    if (q.m > l) return OracleVerdict::zero(); // R1

    const int di = N - q.i, dp = N - q.p, dm = -q.m;
    if (di >= 1 && dm > l) return OracleVerdict::zero(); // R2 + R1

    if (di == 0 && dp == 0) { // h^N(Omega^N(m)) = h^0(O(-m))
        if (dm < 0) return OracleVerdict::zero();
        return OracleVerdict::dimension(ctx.weyl(dm));
    }

    // R3 in the direct presentation
    if (q.p == N && q.m > 0) return OracleVerdict::zero();
    if (q.p == 0 && q.m >= -l) return OracleVerdict::zero();
    // R2 + R3
    if (di >= 1 && dp == N && dm > 0) return OracleVerdict::zero();
    if (di >= 1 && dp == 0 && dm >= -l) return OracleVerdict::zero();

    return OracleVerdict::unknown();
}

// h^0(G, Omega^1(2)) closed form: 3/(l+2) * C(l+2, s+2) * C(l+2, s-1).
inline std::uint64_t h0_oneforms_twist2(const GrassCtx& ctx) {
    const int s = ctx.s(), l = ctx.l();
    if (!(1 < s && s < l))
        throw Error(ErrorCode::hypothesis_violation,
                    "h0_oneforms_twist2 requires 1 < s < l");
    BigInt num = BigInt(3) * binom_u64(l + 2, s + 2) * binom_u64(l + 2, s - 1);
    BigInt den(l + 2);
    BigInt q = num / den;
    if (q * den != num)
        throw Error(ErrorCode::oracle_mismatch,
                    "h0_oneforms_twist2: non-integral value (invalid (s,l))");
    return q.convert_to<std::uint64_t>();
}

inline std::uint64_t h0_line(const GrassCtx& ctx, int d) {
    if (d < 0) throw Error(ErrorCode::hypothesis_violation, "h0_line: negative twist");
    return ctx.weyl(d);
}

} // namespace grassjac
