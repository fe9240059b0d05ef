#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <vector>

#include "grassjac/grassmann.hpp"
#include "grassjac/linalg.hpp"
#include "grassjac/poly.hpp"

namespace gjtest {

using namespace grassjac;

// plain dense Gaussian elimination over Q, no pivoting strategy, no sparsity
inline std::size_t dense_rank_q(std::vector<std::vector<Rational>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c].is_zero()) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

// degree-m slice of the classical Jacobian ideal of sigma: the span of
// { monomial * d(sigma)/dx_i } over monomials of degree m - deg(sigma) + 1
template <class F>
Subspace<F> classical_jacobian_piece(RingEngine<F>& eng, const QPoly& sigma, int m) {
    const F& field = eng.field();
    const auto& piece = eng.piece(m);
    SpanBuilder<F> span(field, piece.dim());
    const int gdeg = m - sigma.degree() + 1;
    if (gdeg < 0) return span.finish();
    const auto& ctx = eng.ctx();
    auto gb = ctx.monomials(gdeg);
    for (std::size_t v = 0; v < ctx.nvars(); ++v) {
        QPoly part = derivative(sigma, v);
        if (part.is_zero()) continue;
        for (std::size_t g = 0; g < gb->size(); ++g) {
            span.clear_scratch();
            for (const auto& [pm, pc] : part.terms())
                piece.accumulate_nf(field, span.scratch(),
                                    piece.monomials().rank_sum(gb->exps(g), pm.e.data()),
                                    field.from_rational(pc));
            span.insert_scratch();
        }
    }
    return span.finish();
}

template <class F>
bool subspace_equal(const F& field, const Subspace<F>& a, const Subspace<F>& b) {
    if (a.ambient() != b.ambient() || a.rank() != b.rank()) return false;
    if (a.pivots() != b.pivots()) return false;
    std::vector<typename F::Elem> scratch(a.ambient(), field.zero());
    for (std::size_t r = 0; r < b.rank(); ++r) {
        lin::scatter_row(field, scratch, b.rows()[r]);
        if (!a.contains(field, scratch)) return false;
    }
    return true;
}

// derivation of the Plucker coordinate ring induced by the elementary
// gl(l+1) generator sending e_u to e_v
inline Derivation gl_derivation(const GrassCtx& ctx, int u, int v) {
    const std::size_t nv = ctx.nvars();
    std::vector<QPoly> images(nv, QPoly(nv));
    for (std::size_t i = 0; i < nv; ++i) {
        const auto& sub = ctx.subsets()[i];
        for (std::size_t k = 0; k < sub.size(); ++k) {
            if (sub[k] != u) continue;
            // replace u by v; zero when v already occurs elsewhere
            std::vector<int> mod = sub;
            mod[k] = v;
            bool repeated = false;
            for (std::size_t j = 0; j < mod.size(); ++j)
                if (j != k && mod[j] == v) repeated = true;
            if (repeated) continue;
            // sort and track the sign of the permutation
            int sign = 1;
            for (std::size_t x = 0; x + 1 < mod.size(); ++x)
                for (std::size_t y = 0; y + 1 < mod.size() - x; ++y)
                    if (mod[y] > mod[y + 1]) {
                        std::swap(mod[y], mod[y + 1]);
                        sign = -sign;
                    }
            images[i] += QPoly::variable(nv, ctx.index_of_subset(mod)).scaled(Rational(sign));
        }
    }
    return Derivation::from_images(std::move(images));
}

} // namespace gjtest
