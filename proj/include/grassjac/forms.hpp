#pragma once

#include <functional>

#include "grassjac/cohomology.hpp"
#include "grassjac/grassmann.hpp"

namespace grassjac {

// A twisted one-form in homogeneous terms: one linear coefficient L_I per
// Plucker variable, with the Euler contraction sum L_I * p_I inside I2.
// Representatives are classes modulo the gradient tuples of the relations.
struct OneForm {
    std::vector<QPoly> coeff;
};

namespace forms_detail {

// flatten a linear-coefficient tuple into candidate coordinates (I, j)
inline std::vector<Rational> tuple_coords(const GrassCtx& ctx, const std::vector<QPoly>& tuple) {
    const std::size_t v = ctx.nvars();
    std::vector<Rational> out(v * v, Rational(0));
    for (std::size_t I = 0; I < v; ++I) {
        for (const auto& [m, c] : tuple[I].terms()) {
            if (m.degree() != 1)
                throw Error(ErrorCode::internal_inconsistency, "one-form coefficients must be linear");
            for (std::size_t j = 0; j < v; ++j)
                if (m.e[j] == 1) out[I * v + j] = c;
        }
    }
    return out;
}

inline std::vector<QPoly> coords_tuple(const GrassCtx& ctx, const std::vector<Rational>& coords) {
    const std::size_t v = ctx.nvars();
    std::vector<QPoly> tuple(v, QPoly(v));
    for (std::size_t I = 0; I < v; ++I)
        for (std::size_t j = 0; j < v; ++j)
            if (!coords[I * v + j].is_zero())
                tuple[I].add_term(Monomial::var(v, j), coords[I * v + j]);
    return tuple;
}

} // namespace forms_detail

// check the defining property of a one-form representative
inline bool euler_contraction_in_ideal(RingEngine<RationalField>& eng, const OneForm& f) {
    const auto& ctx = eng.ctx();
    QPoly contraction(ctx.nvars());
    for (std::size_t I = 0; I < ctx.nvars(); ++I)
        contraction += mul(f.coeff[I], QPoly::variable(ctx.nvars(), I));
    auto nf = eng.normal_form(contraction, 2);
    for (const auto& x : nf)
        if (!x.is_zero()) return false;
    return true;
}

// Basis of { (L_I) : sum L_I p_I in I2 } / span{ (dq/dp_I) : q in I2 },
// validated against the closed-form dimension (Weyl-type count on the
// Grassmannian, the Euler-sequence syzygy count C(l+1, 2) on P^l).
inline std::vector<OneForm> oneforms_basis(RingEngine<RationalField>& eng) {
    const GrassCtx& ctx = eng.ctx();
    RationalField F;
    const std::size_t v = ctx.nvars();
    const auto& piece2 = eng.piece(2);

    // constraint matrix: rows = S_2 coordinates, cols = candidates (I, j)
    SparseMatrix<RationalField> m = SparseMatrix<RationalField>::zero(piece2.dim(), v * v);
    {
        std::vector<Rational> nf(piece2.dim(), Rational(0));
        auto b2 = ctx.monomials(2);
        for (std::size_t I = 0; I < v; ++I) {
            for (std::size_t j = 0; j < v; ++j) {
                std::fill(nf.begin(), nf.end(), Rational(0));
                Monomial prod = Monomial::var(v, I).times(Monomial::var(v, j));
                piece2.accumulate_nf(F, nf, b2->rank(prod.e.data()), Rational(1));
                for (std::size_t r = 0; r < piece2.dim(); ++r)
                    if (!nf[r].is_zero()) m.set(F, r, I * v + j, nf[r]);
            }
        }
        m.sort_rows();
    }
    Subspace<RationalField> syzygies = kernel(F, m);

    // gradient tuples of the relations span the trivial classes
    SpanBuilder<RationalField> span(F, v * v);
    for (const auto& q : ctx.relations()) {
        std::vector<QPoly> grad;
        grad.reserve(v);
        for (std::size_t I = 0; I < v; ++I) grad.push_back(derivative(q, I));
        auto coords = forms_detail::tuple_coords(ctx, grad);
        span.insert(coords);
    }

    std::vector<OneForm> out;
    std::vector<Rational> scratch(v * v, Rational(0));
    for (std::size_t r = 0; r < syzygies.rank(); ++r) {
        lin::scatter_row(F, scratch, syzygies.rows()[r]);
        auto copy = scratch;
        if (span.insert(copy) >= 0) {
            out.push_back(OneForm{forms_detail::coords_tuple(ctx, scratch)});
        }
    }

    std::uint64_t expected;
    if (ctx.degenerate_projective()) {
        expected = binom_u64(ctx.l() + 1, 2); // Euler-sequence syzygies on P^l
    } else {
        expected = h0_oneforms_twist2(ctx);
    }
    if (out.size() != expected)
        throw Error(ErrorCode::oracle_mismatch,
                    "one-form basis has dimension " + std::to_string(out.size()) +
                        ", oracle expects " + std::to_string(expected));
    for (const auto& f : out)
        if (!euler_contraction_in_ideal(eng, f))
            throw Error(ErrorCode::internal_inconsistency,
                        "one-form fails the Euler contraction property");
    return out;
}

// ---------------------------------------------------------------------------
// Twisted vector fields: derivations of twist e preserving the Plucker
// ideal, modulo derivations with all images inside the ideal. The quotient
// is realized by parametrizing images through normal-form representatives,
// so "trivial" directions never enter the candidate space. The Euler parts
// (multiples of the Euler derivation) are contained in this space and
// account for the twist-e sections of the structure-sheaf summand.

template <class F>
struct ThetaBasis {
    int twist = 0;
    std::shared_ptr<const MonomialBasis> image_mono; // degree e+1 monomials
    std::vector<std::uint32_t> image_complement;     // complement monomial ids of S_{e+1}
    std::size_t n_vars = 0;
    std::vector<Row<F>> combos; // basis over candidate coords (var-major)

    std::size_t size() const { return combos.size(); }
    std::size_t candidates() const { return n_vars * image_complement.size(); }
};

template <class F>
ThetaBasis<F> theta_sections_basis(RingEngine<F>& eng, int e) {
    if (e < 0) throw Error(ErrorCode::hypothesis_violation, "theta_sections: negative twist");
    const GrassCtx& ctx = eng.ctx();
    const F& field = eng.field();
    const std::size_t v = ctx.nvars();

    ThetaBasis<F> basis;
    basis.twist = e;
    basis.n_vars = v;
    const auto& piece1 = eng.piece(e + 1);
    basis.image_mono = ctx.monomials(e + 1);
    basis.image_complement.assign(piece1.complement().begin(), piece1.complement().end());
    const std::size_t k1 = basis.image_complement.size();
    const std::size_t n_cand = v * k1;

    const std::size_t n_rel = ctx.relations().size();
    if (n_rel == 0) {
        // no ideal to preserve: every candidate is a basis field
        for (std::size_t k = 0; k < n_cand; ++k) {
            Row<F> r;
            r.idx.push_back(static_cast<std::uint32_t>(k));
            r.val.push_back(field.one());
            basis.combos.push_back(std::move(r));
        }
    } else {
        const auto& piece_c = eng.piece(e + 2);
        const std::size_t seg = piece_c.dim();
        // dq[r][I], each a linear polynomial
        std::vector<std::vector<QPoly>> dq(n_rel, std::vector<QPoly>());
        for (std::size_t r = 0; r < n_rel; ++r)
            for (std::size_t I = 0; I < v; ++I) dq[r].push_back(derivative(ctx.relations()[r], I));

        KernelBuilder<F> kb(field, n_rel * seg, n_cand);
        std::vector<typename F::Elem> scratch(n_rel * seg, field.zero());
        std::vector<typename F::Elem> nf_seg(seg, field.zero());
        for (std::size_t I = 0; I < v; ++I) {
            for (std::size_t t = 0; t < k1; ++t) {
                const std::uint8_t* me = basis.image_mono->exps(basis.image_complement[t]);
                std::fill(scratch.begin(), scratch.end(), field.zero());
                for (std::size_t r = 0; r < n_rel; ++r) {
                    std::fill(nf_seg.begin(), nf_seg.end(), field.zero());
                    for (const auto& [mq, cq] : dq[r][I].terms()) {
                        const std::size_t idx = piece_c.monomials().rank_sum(me, mq.e.data());
                        piece_c.accumulate_nf(field, nf_seg, idx, field.from_rational(cq));
                    }
                    for (std::size_t j = 0; j < seg; ++j)
                        if (!field.is_zero(nf_seg[j])) scratch[r * seg + j] = nf_seg[j];
                }
                auto combo = kb.insert(scratch, I * k1 + t);
                if (combo) basis.combos.push_back(std::move(*combo));
            }
        }
    }

    if (e == 0) {
        const std::uint64_t expect =
            static_cast<std::uint64_t>(ctx.l() + 1) * static_cast<std::uint64_t>(ctx.l() + 1);
        if (basis.combos.size() != expect)
            throw Error(ErrorCode::oracle_mismatch,
                        "twist-0 field space has dimension " + std::to_string(basis.combos.size()) +
                            ", expected (l+1)^2 = " + std::to_string(expect));
    }
    return basis;
}

// materialize basis fields as polynomial derivations (rational engines)
inline std::vector<Derivation> theta_sections(RingEngine<RationalField>& eng, int e) {
    auto basis = theta_sections_basis(eng, e);
    RationalField F;
    const std::size_t v = basis.n_vars;
    const std::size_t k1 = basis.image_complement.size();
    std::vector<Derivation> out;
    out.reserve(basis.size());
    std::vector<Rational> coords(basis.candidates(), Rational(0));
    for (const auto& combo : basis.combos) {
        lin::scatter_row(F, coords, combo);
        std::vector<QPoly> images(v, QPoly(v));
        for (std::size_t I = 0; I < v; ++I)
            for (std::size_t t = 0; t < k1; ++t) {
                const auto& c = coords[I * k1 + t];
                if (!c.is_zero())
                    images[I].add_term(basis.image_mono->monomial(basis.image_complement[t]), c);
            }
        out.push_back(Derivation::from_images(std::move(images)));
    }
    return out;
}

// twist-e sections of the prolongation model: the computed field basis plus
// the degree-e multiplier monomials that realize the structure-sheaf part
// through sigma-multiples
template <class F>
struct SigmaSections {
    ThetaBasis<F> fields;
    std::vector<std::uint32_t> multipliers; // complement monomials of S_e
};

template <class F>
SigmaSections<F> sigma_sections(RingEngine<F>& eng, int e) {
    SigmaSections<F> out;
    out.fields = theta_sections_basis(eng, e);
    const auto& pe = eng.piece(e);
    out.multipliers.assign(pe.complement().begin(), pe.complement().end());
    return out;
}

// ---------------------------------------------------------------------------
// Wedge of N one-forms into a twisted volume section, computed on a chart:
// pull every form to chart coordinates, take the determinant of the N x N
// coefficient matrix, and express it as the restriction of a section of
// degree 2N - l - 1.

struct VolumeSection {
    QPoly rep;             // normal-form representative in S_{2N-l-1}
    std::string chart_id;
    int degree = 0;
};

class WedgeCalculator {
public:
    WedgeCalculator(RingEngine<RationalField>& eng, Chart ch)
        : eng_(&eng), chart_(std::move(ch)),
          target_degree_(2 * eng.ctx().dim() - eng.ctx().l() - 1),
          solver_(eng.ctx(), eng.piece(2 * eng.ctx().dim() - eng.ctx().l() - 1), chart_) {
        const auto& ctx = eng.ctx();
        restricted_vars_.reserve(ctx.nvars());
        for (std::size_t vId = 0; vId < ctx.nvars(); ++vId)
            restricted_vars_.push_back(chart_.minor_of(vId));
    }

    const Chart& chart() const { return chart_; }
    int target_degree() const { return target_degree_; }

    VolumeSection wedge(const std::vector<const OneForm*>& forms) const {
        const auto& ctx = eng_->ctx();
        const std::size_t n = static_cast<std::size_t>(ctx.dim());
        if (forms.size() != n)
            throw Error(ErrorCode::hypothesis_violation,
                        "wedge_volume needs exactly N = " + std::to_string(n) + " forms");
        const std::size_t nx = chart_.n_coords();

        std::vector<std::vector<QPoly>> a(n, std::vector<QPoly>(nx, QPoly(nx)));
        for (std::size_t k = 0; k < n; ++k) {
            // chart coefficients of sum_I L_I dp_I
            std::vector<QPoly> li;
            li.reserve(ctx.nvars());
            for (std::size_t I = 0; I < ctx.nvars(); ++I) {
                QPoly s(nx);
                for (const auto& [m, c] : forms[k]->coeff[I].terms())
                    for (std::size_t j = 0; j < ctx.nvars(); ++j)
                        if (m.e[j] == 1) s += restricted_vars_[j].scaled(c);
                li.push_back(std::move(s));
            }
            for (std::size_t x = 0; x < nx; ++x) {
                QPoly entry(nx);
                for (std::size_t I = 0; I < ctx.nvars(); ++I) {
                    const QPoly& d = chart_.dminor(I, x);
                    if (!d.is_zero() && !li[I].is_zero()) entry += mul(li[I], d);
                }
                a[k][x] = std::move(entry);
            }
        }

        QPoly det = poly_determinant(a);
        VolumeSection out;
        out.chart_id = chart_.id();
        out.degree = target_degree_;
        if (det.is_zero()) {
            out.rep = QPoly(ctx.nvars());
            return out;
        }
        auto sol = solver_.solve(det);
        if (!sol)
            throw InconsistencyError(
                "wedge determinant is not the restriction of a degree-" +
                std::to_string(target_degree_) + " section");
        out.rep = std::move(*sol);
        return out;
    }

    VolumeSection wedge(const std::vector<OneForm>& forms) const {
        std::vector<const OneForm*> ptrs;
        ptrs.reserve(forms.size());
        for (const auto& f : forms) ptrs.push_back(&f);
        return wedge(ptrs);
    }

private:
    static QPoly poly_determinant(const std::vector<std::vector<QPoly>>& a) {
        const std::size_t n = a.size();
        std::vector<std::size_t> cols(n);
        for (std::size_t i = 0; i < n; ++i) cols[i] = i;
        return det_rec(a, 0, cols);
    }

    static QPoly det_rec(const std::vector<std::vector<QPoly>>& a, std::size_t row,
                         const std::vector<std::size_t>& cols) {
        const std::size_t nx = a[0][0].nvars();
        if (cols.size() == 1) return a[row][cols[0]];
        QPoly det(nx);
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (a[row][cols[k]].is_zero()) continue;
            rest.clear();
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (j != k) rest.push_back(cols[j]);
            QPoly c = mul(a[row][cols[k]], det_rec(a, row + 1, rest));
            if (k % 2 == 0)
                det += c;
            else
                det -= c;
        }
        return det;
    }

    RingEngine<RationalField>* eng_;
    Chart chart_;
    int target_degree_;
    ChartSolver solver_;
    std::vector<QPoly> restricted_vars_;
};

struct WedgeSurjectivityReport {
    bool surjective = false;
    std::size_t span_dim = 0;
    std::size_t target_dim = 0;
    std::size_t samples = 0;
};

// Span of sampled decomposable wedges: each sample wedges N seeded random
// small combinations of the basis one-forms. Pure basis subsets sit in very
// special position (a quarter of them wedge to zero on G(2,4)) and converge
// slowly; generic decomposables reach the full span at near-rank speed.
inline WedgeSurjectivityReport wedge_surjectivity_check(RingEngine<RationalField>& eng,
                                                        const std::vector<OneForm>& basis,
                                                        std::size_t samples, Rng rng,
                                                        const WedgeCalculator& calc) {
    RationalField F;
    const auto& ctx = eng.ctx();
    const int d = calc.target_degree();
    const auto& piece = eng.piece(d);
    if (samples < piece.dim())
        throw Error(ErrorCode::hypothesis_violation,
                    "wedge_surjectivity_check: need at least dim S_" + std::to_string(d) +
                        " samples");
    WedgeSurjectivityReport rep;
    rep.target_dim = piece.dim();
    rep.samples = samples;
    const std::size_t n = static_cast<std::size_t>(ctx.dim());
    if (basis.size() < n) return rep; // too few distinct forms: nothing spans
    const std::size_t nv = ctx.nvars();
    SpanBuilder<RationalField> span(F, piece.dim());
    for (std::size_t t = 0; t < samples; ++t) {
        std::vector<OneForm> forms(n);
        std::vector<const OneForm*> ptrs;
        ptrs.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            forms[k].coeff.assign(nv, QPoly(nv));
            for (const auto& f : basis) {
                const std::int64_t c = rng.range(-3, 3);
                if (c == 0) continue;
                for (std::size_t I = 0; I < nv; ++I)
                    forms[k].coeff[I] += f.coeff[I].scaled(Rational(c));
            }
            ptrs.push_back(&forms[k]);
        }
        auto vol = calc.wedge(ptrs);
        if (vol.rep.is_zero()) continue;
        auto nf = piece.nf_from_qpoly(F, vol.rep);
        span.insert(nf);
        if (span.rank() == piece.dim()) break; // span can only grow
    }
    rep.span_dim = span.rank();
    rep.surjective = rep.span_dim == rep.target_dim;
    return rep;
}

} // namespace grassjac
