#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "grassjac/linalg.hpp"
#include "grassjac/poly.hpp"
#include "grassjac/rng.hpp"

namespace grassjac {

// Exact dimension of H^0(G(s,l+1), O(d)) by the hook-content product for the
// s x (l+1-s) rectangle. Integer division is checked; this is the oracle every
// graded piece is validated against.
inline std::uint64_t weyl_dim(int s, int l, int d) {
    if (d < 0) return 0;
    BigInt num = 1, den = 1;
    for (int i = 1; i <= s; ++i) {
        for (int j = 1; j <= l + 1 - s; ++j) {
            num *= (d + i + j - 1);
            den *= (i + j - 1);
        }
    }
    BigInt q = num / den;
    if (q * den != num)
        throw Error(ErrorCode::internal_inconsistency, "weyl_dim: non-exact hook-content division");
    return q.convert_to<std::uint64_t>();
}

class Chart; // below

// The ambient Grassmannian G(s, l+1) in Plucker coordinates: variable list,
// quadratic relation space I2, dimension oracle, charts. Immutable after
// construction except for internal read-mostly caches.
class GrassCtx {
public:
    GrassCtx(int s, int l) : s_(s), l_(l) {
        if (s < 1 || s > l)
            throw Error(ErrorCode::hypothesis_violation,
                        "build_ctx: need 1 <= s <= l, got s=" + std::to_string(s) +
                            " l=" + std::to_string(l));
        enumerate_subsets();
        n_ = s_ * (l_ + 1 - s_);
        for (const auto& sub : subsets_) {
            std::string nm = "p_{";
            for (std::size_t i = 0; i < sub.size(); ++i) {
                if (i) nm += ",";
                nm += std::to_string(sub[i]);
            }
            nm += "}";
            vars_.names.push_back(nm);
        }
    }

    int s() const { return s_; }
    int l() const { return l_; }
    int dim() const { return n_; }                 // N = s(l+1-s)
    int canonical_twist() const { return -(l_ + 1); }
    std::size_t nvars() const { return subsets_.size(); }
    const VarTable& vars() const { return vars_; }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    bool degenerate_projective() const { return s_ == 1 || s_ == l_; }

    // quadratic relations: RREF coefficient basis in degree-2 monomial
    // coordinates, and the same rows as polynomials. Built lazily: the
    // evaluation-kernel computation is the expensive part of a context and
    // closed-form queries must not pay for it.
    const Subspace<RationalField>& relation_space() const {
        ensure_relations();
        return i2_;
    }
    const std::vector<QPoly>& relations() const {
        ensure_relations();
        return i2_polys_;
    }

    std::uint64_t weyl(int d) const { return weyl_dim(s_, l_, d); }

    std::shared_ptr<const MonomialBasis> monomials(int d) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = mono_cache_.find(d);
        if (it != mono_cache_.end()) return it->second;
        auto b = std::make_shared<const MonomialBasis>(nvars(), d);
        mono_cache_.emplace(d, b);
        return b;
    }

    // Plucker vector of an s x (l+1) matrix: all maximal minors, in variable order
    std::vector<Rational> plucker_point(const std::vector<std::vector<Rational>>& mat) const {
        std::vector<Rational> out;
        out.reserve(nvars());
        for (const auto& sub : subsets_) out.push_back(minor_det(mat, sub));
        return out;
    }

    std::size_t index_of_subset(const std::vector<int>& sub) const {
        for (std::size_t i = 0; i < subsets_.size(); ++i)
            if (subsets_[i] == sub) return i;
        throw Error(ErrorCode::internal_inconsistency, "unknown Plucker index set");
    }

private:
    void enumerate_subsets() {
        std::vector<int> cur(s_);
        for (int i = 0; i < s_; ++i) cur[i] = i;
        for (;;) {
            subsets_.push_back(cur);
            int i = s_ - 1;
            while (i >= 0 && cur[i] == l_ - (s_ - 1 - i)) --i;
            if (i < 0) break;
            ++cur[i];
            for (int j = i + 1; j < s_; ++j) cur[j] = cur[j - 1] + 1;
        }
    }

    static Rational minor_det(const std::vector<std::vector<Rational>>& mat,
                              const std::vector<int>& cols) {
        const std::size_t n = cols.size();
        if (n == 1) return mat[0][cols[0]];
        Rational det = 0;
        std::vector<int> rest;
        rest.reserve(n - 1);
        for (std::size_t k = 0; k < n; ++k) {
            rest.clear();
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) rest.push_back(cols[j]);
            std::vector<std::vector<Rational>> sub(mat.begin() + 1, mat.end());
            Rational c = mat[0][cols[k]] * minor_det(sub, rest);
            if (k % 2 == 0)
                det += c;
            else
                det -= c;
        }
        return det;
    }

    std::vector<std::vector<Rational>> random_matrix(Rng& rng) const {
        std::vector<std::vector<Rational>> m(s_, std::vector<Rational>(l_ + 1));
        for (auto& row : m)
            for (auto& x : row) x = Rational(rng.range(-9, 9));
        return m;
    }

    void ensure_relations() const {
        std::lock_guard<std::mutex> lock(rel_mu_);
        if (relations_built_) return;
        build_relations();
        relations_built_ = true;
    }

    void build_relations() const {
        RationalField F;
        auto b2 = monomials(2);
        const std::size_t nm = b2->size();
        if (degenerate_projective()) {
            i2_ = Subspace<RationalField>(nm);
            check_i2_dim();
            return;
        }
        Rng rng(0x9ea5u ^ (static_cast<std::uint64_t>(s_) << 16) ^ static_cast<std::uint64_t>(l_));
        auto batch = [&](Rng r) {
            SparseMatrix<RationalField> evals = SparseMatrix<RationalField>::zero(2 * nm, nm);
            for (std::size_t pt = 0; pt < 2 * nm; ++pt) {
                auto point = plucker_point(random_matrix(r));
                for (std::size_t j = 0; j < nm; ++j) {
                    const std::uint8_t* e = b2->exps(j);
                    Rational v = 1;
                    for (std::size_t k = 0; k < nvars(); ++k)
                        for (int t = 0; t < e[k]; ++t) v *= point[k];
                    evals.set(F, pt, j, v);
                }
            }
            return kernel(F, evals);
        };
        i2_ = batch(rng.fork("plucker-batch-1"));
        auto second = batch(rng.fork("plucker-batch-2"));
        if (second.rank() != i2_.rank())
            throw Error(ErrorCode::oracle_mismatch,
                        "plucker relations: evaluation batches disagree on rank");
        std::vector<Rational> scratch(nm, Rational(0));
        for (std::size_t r = 0; r < i2_.rank(); ++r) {
            lin::scatter_row(F, scratch, i2_.rows()[r]);
            if (!second.contains(F, scratch))
                throw Error(ErrorCode::oracle_mismatch,
                            "plucker relations: evaluation batches disagree on span");
        }
        check_i2_dim();
        for (std::size_t r = 0; r < i2_.rank(); ++r) {
            QPoly q(nvars());
            const auto& row = i2_.rows()[r];
            std::vector<Rational> v(nm, Rational(0));
            lin::scatter_row(F, v, row);
            for (std::size_t j = 0; j < nm; ++j)
                if (!v[j].is_zero()) q.add_term(b2->monomial(j), v[j]);
            i2_polys_.push_back(std::move(q));
        }
    }

    void check_i2_dim() const {
        const std::uint64_t expected =
            monomial_count(nvars(), 2) - weyl(2);
        if (i2_.rank() != expected)
            throw Error(ErrorCode::oracle_mismatch,
                        "plucker relations: dim I2 = " + std::to_string(i2_.rank()) +
                            ", oracle expects " + std::to_string(expected));
    }

    int s_, l_, n_ = 0;
    std::vector<std::vector<int>> subsets_;
    VarTable vars_;
    mutable Subspace<RationalField> i2_;
    mutable std::vector<QPoly> i2_polys_;
    mutable bool relations_built_ = false;
    mutable std::mutex rel_mu_;

    mutable std::mutex mu_;
    mutable std::map<int, std::shared_ptr<const MonomialBasis>> mono_cache_;
};

inline GrassCtx build_ctx(int s, int l) { return GrassCtx(s, l); }

// ---------------------------------------------------------------------------
// Graded piece S_d = (polynomial ring / Plucker ideal) in degree d, with
// normal forms against the echelon basis of I_d. I_d is spanned by
// (degree d-2 monomials) x I2, which generates because the Plucker ideal is
// quadratically generated; the Weyl-dimension assertion would catch a gap.

template <class F>
class GradedPiece {
public:
    GradedPiece(const F& field, const GrassCtx& ctx, int d) : d_(d), mono_(ctx.monomials(d)) {
        const std::size_t nm = mono_->size();
        SpanBuilder<F> span(field, nm);
        if (!ctx.relations().empty() && d >= 2) {
            auto mults = ctx.monomials(d - 2);
            Row<F> row;
            for (std::size_t i = 0; i < mults->size(); ++i) {
                const std::uint8_t* me = mults->exps(i);
                for (const auto& q : ctx.relations()) {
                    row.idx.clear();
                    row.val.clear();
                    for (const auto& [m, c] : q.terms()) {
                        row.idx.push_back(
                            static_cast<std::uint32_t>(mono_->rank_sum(me, m.e.data())));
                        row.val.push_back(field.from_rational(c));
                    }
                    span.insert_sparse(row);
                }
            }
        }
        ideal_ = span.finish();

        const std::uint64_t expect = ctx.weyl(d);
        dim_s_ = nm - ideal_.rank();
        if (dim_s_ != expect)
            throw Error(ErrorCode::oracle_mismatch,
                        "graded piece d=" + std::to_string(d) + ": dim " + std::to_string(dim_s_) +
                            " != weyl_dim " + std::to_string(expect) +
                            " (wrong ideal or unlucky prime)");
        index_complement(field);
    }

    // construct from cached data (already validated against weyl_dim by caller)
    GradedPiece(const F& field, const GrassCtx& ctx, int d, Subspace<F> ideal)
        : d_(d), mono_(ctx.monomials(d)), ideal_(std::move(ideal)) {
        dim_s_ = mono_->size() - ideal_.rank();
        if (dim_s_ != ctx.weyl(d))
            throw Error(ErrorCode::oracle_mismatch, "cached graded piece fails weyl_dim check");
        index_complement(field);
    }

    int degree() const { return d_; }
    const MonomialBasis& monomials() const { return *mono_; }
    std::size_t n_monomials() const { return mono_->size(); }
    std::size_t dim() const { return dim_s_; }
    const Subspace<F>& ideal() const { return ideal_; }

    // complement coordinate of a monomial, or -1 if it is an ideal pivot
    std::int32_t comp_index(std::size_t mono_idx) const { return comp_index_[mono_idx]; }
    const std::vector<std::uint32_t>& complement() const { return complement_; }

    // acc += c * nf(monomial)
    void accumulate_nf(const F& field, std::vector<typename F::Elem>& acc, std::size_t mono_idx,
                       const typename F::Elem& c) const {
        const std::int32_t ci = comp_index_[mono_idx];
        if (ci >= 0) {
            acc[static_cast<std::size_t>(ci)] = field.add(acc[static_cast<std::size_t>(ci)], c);
            return;
        }
        const auto* row = nf_row(mono_idx);
        for (std::size_t j = 0; j < dim_s_; ++j) {
            if (!field.is_zero(row[j])) acc[j] = field.add(acc[j], field.mul(c, row[j]));
        }
    }

    std::vector<typename F::Elem> nf_from_qpoly(const F& field, const QPoly& f) const {
        std::vector<typename F::Elem> acc(dim_s_, field.zero());
        for (const auto& [m, c] : f.terms()) {
            if (m.degree() != d_)
                throw Error(ErrorCode::internal_inconsistency,
                            "normal_form: degree mismatch (term of degree " +
                                std::to_string(m.degree()) + " in S_" + std::to_string(d_) + ")");
            accumulate_nf(field, acc, mono_->rank(m.e.data()), field.from_rational(c));
        }
        return acc;
    }

    // normal-form coefficient vector back to a polynomial over the
    // complement monomials (rational field only)
    QPoly to_qpoly(const RationalField&, const std::vector<Rational>& v) const {
        QPoly f(mono_->nvars() ? mono_->nvars() : 0);
        QPoly out(mono_->nvars());
        (void)f;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) out.add_term(mono_->monomial(complement_[j]), v[j]);
        return out;
    }

    const typename F::Elem* nf_row(std::size_t mono_idx) const {
        return nf_rows_.data() + static_cast<std::size_t>(pivot_pos_[mono_idx]) * dim_s_;
    }

private:
    void index_complement(const F& field) {
        const std::size_t nm = mono_->size();
        comp_index_.assign(nm, -1);
        pivot_pos_.assign(nm, -1);
        complement_.reserve(dim_s_);
        std::size_t r = 0;
        for (std::uint32_t c = 0; c < nm; ++c) {
            if (r < ideal_.pivots().size() && ideal_.pivots()[r] == c) {
                pivot_pos_[c] = static_cast<std::int64_t>(r);
                ++r;
            } else {
                comp_index_[c] = static_cast<std::int32_t>(complement_.size());
                complement_.push_back(c);
            }
        }
        // nf(pivot monomial) = -(rest of its fully reduced row), expressed in
        // complement coordinates
        nf_rows_.assign(ideal_.rank() * dim_s_, field.zero());
        std::vector<typename F::Elem> scratch(nm, field.zero());
        for (std::size_t rr = 0; rr < ideal_.rank(); ++rr) {
            lin::scatter_row(field, scratch, ideal_.rows()[rr]);
            auto* out = nf_rows_.data() + rr * dim_s_;
            for (std::size_t j = 0; j < dim_s_; ++j) {
                const auto& v = scratch[complement_[j]];
                out[j] = field.is_zero(v) ? field.zero() : field.neg(v);
            }
        }
    }

    int d_;
    std::shared_ptr<const MonomialBasis> mono_;
    Subspace<F> ideal_;
    std::size_t dim_s_ = 0;
    std::vector<std::int32_t> comp_index_;
    std::vector<std::int64_t> pivot_pos_;
    std::vector<std::uint32_t> complement_;
    std::vector<typename F::Elem> nf_rows_;
};

// ---------------------------------------------------------------------------
// Charts: the affine piece where one Plucker coordinate is 1, with the
// s x (l+1-s) coordinate grid and the maximal-minor parametrization.

class Chart {
public:
    Chart(const GrassCtx& ctx, std::vector<int> pivot_subset)
        : ctx_(&ctx), pivot_(std::move(pivot_subset)) {
        const int s = ctx.s(), l = ctx.l();
        if (static_cast<int>(pivot_.size()) != s)
            throw Error(ErrorCode::internal_inconsistency, "chart: pivot subset has wrong size");
        rows_ = static_cast<std::size_t>(s);
        cols_ = static_cast<std::size_t>(l + 1 - s);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                xvars_.names.push_back("x_{" + std::to_string(r) + "," + std::to_string(c) + "}");

        // columns of the s x (l+1) frame: identity at the pivot subset, the
        // x grid on the complement (ascending column order)
        std::vector<int> comp;
        for (int j = 0; j <= l; ++j)
            if (std::find(pivot_.begin(), pivot_.end(), j) == pivot_.end()) comp.push_back(j);

        const std::size_t nx = rows_ * cols_;
        std::vector<std::vector<QPoly>> frame(rows_, std::vector<QPoly>(l + 1, QPoly(nx)));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (int j = 0; j <= l; ++j) {
                auto pit = std::find(pivot_.begin(), pivot_.end(), j);
                if (pit != pivot_.end()) {
                    const std::size_t k = static_cast<std::size_t>(pit - pivot_.begin());
                    frame[r][j] = QPoly::constant(nx, (k == r) ? 1 : 0);
                } else {
                    auto cit = std::find(comp.begin(), comp.end(), j);
                    const std::size_t c = static_cast<std::size_t>(cit - comp.begin());
                    frame[r][j] = QPoly::variable(nx, r * cols_ + c);
                }
            }
        }
        minors_.reserve(ctx.nvars());
        for (const auto& sub : ctx.subsets()) minors_.push_back(poly_minor(frame, sub));
        dminors_.resize(ctx.nvars());
        for (std::size_t v = 0; v < ctx.nvars(); ++v) {
            dminors_[v].reserve(nx);
            for (std::size_t x = 0; x < nx; ++x) dminors_[v].push_back(derivative(minors_[v], x));
        }
    }

    const std::vector<int>& pivot_subset() const { return pivot_; }
    std::size_t n_coords() const { return rows_ * cols_; }
    const VarTable& xvars() const { return xvars_; }
    const QPoly& minor_of(std::size_t var) const { return minors_[var]; }
    const QPoly& dminor(std::size_t var, std::size_t coord) const { return dminors_[var][coord]; }

    std::string id() const {
        std::string out = "chart";
        for (int j : pivot_) out += "_" + std::to_string(j);
        return out;
    }

    // substitution p_I -> minor_I(x)
    QPoly restrict(const QPoly& f) const {
        const std::size_t nx = n_coords();
        QPoly out(nx);
        for (const auto& [m, c] : f.terms()) {
            QPoly t = QPoly::constant(nx, c);
            for (std::size_t v = 0; v < m.e.size(); ++v)
                for (int k = 0; k < m.e[v]; ++k) t = mul(t, minors_[v]);
            out += t;
        }
        return out;
    }

private:
    static QPoly poly_minor(const std::vector<std::vector<QPoly>>& frame,
                            const std::vector<int>& cols) {
        return poly_det(frame, 0, cols);
    }

    static QPoly poly_det(const std::vector<std::vector<QPoly>>& frame, std::size_t row,
                          const std::vector<int>& cols) {
        const std::size_t nx = frame[0][0].nvars();
        if (cols.size() == 1) return frame[row][cols[0]];
        QPoly det(nx);
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            rest.clear();
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (j != k) rest.push_back(cols[j]);
            QPoly c = mul(frame[row][cols[k]], poly_det(frame, row + 1, rest));
            if (k % 2 == 0)
                det += c;
            else
                det -= c;
        }
        return det;
    }

    const GrassCtx* ctx_;
    std::vector<int> pivot_;
    std::size_t rows_ = 0, cols_ = 0;
    VarTable xvars_;
    std::vector<QPoly> minors_;
    std::vector<std::vector<QPoly>> dminors_;
};

inline Chart chart(const GrassCtx& ctx, std::vector<int> pivot_subset) {
    return Chart(ctx, std::move(pivot_subset));
}

inline Chart default_chart(const GrassCtx& ctx) {
    std::vector<int> p(ctx.s());
    for (int i = 0; i < ctx.s(); ++i) p[i] = i;
    return Chart(ctx, std::move(p));
}

inline Chart last_chart(const GrassCtx& ctx) {
    std::vector<int> p(ctx.s());
    for (int i = 0; i < ctx.s(); ++i) p[i] = ctx.l() + 1 - ctx.s() + i;
    return Chart(ctx, std::move(p));
}

inline QPoly chart_restrict(const Chart& ch, const QPoly& f) { return ch.restrict(f); }

// Inverts the chart trivialization on one graded piece: finds the degree-d
// section whose restriction is a given chart polynomial. Build once per
// (chart, degree), solve many right-hand sides.
class ChartSolver {
public:
    ChartSolver(const GrassCtx& ctx, const GradedPiece<RationalField>& piece, const Chart& ch)
        : piece_(&piece) {
        RationalField F;
        const auto& mono = piece.monomials();
        const std::size_t ncols = piece.dim();

        std::vector<QPoly> restr;
        restr.reserve(ncols);
        for (std::size_t j = 0; j < ncols; ++j) {
            QPoly rep = QPoly::term(ctx.nvars(), mono.monomial(piece.complement()[j]), Rational(1));
            restr.push_back(ch.restrict(rep));
        }
        for (const auto& g : restr)
            for (const auto& [m, c] : g.terms())
                if (!xrow_.count(m)) {
                    const std::size_t k = xrow_.size();
                    xrow_.emplace(m, k);
                }
        const std::size_t nrows = xrow_.size();

        a_ = SparseMatrix<RationalField>::zero(nrows, ncols);
        for (std::size_t j = 0; j < ncols; ++j)
            for (const auto& [m, c] : restr[j].terms()) a_.set(F, xrow_.at(m), j, c);
        a_.sort_rows();

        // left inverse: rref([A | I]) rows with pivots in the A block give
        // B with B*A = Id (restriction is injective on S_d)
        SparseMatrix<RationalField> aug = SparseMatrix<RationalField>::zero(nrows, ncols + nrows);
        for (std::size_t r = 0; r < nrows; ++r) {
            aug.rows[r] = a_.rows[r];
            aug.rows[r].idx.push_back(static_cast<std::uint32_t>(ncols + r));
            aug.rows[r].val.push_back(Rational(1));
        }
        auto [rr, rank] = rref(F, aug);
        if (rank < ncols)
            throw Error(ErrorCode::internal_inconsistency,
                        "chart solver: restriction matrix is column-deficient");
        binv_.assign(ncols, {});
        for (std::size_t r = 0; r < rank; ++r) {
            const auto& row = rr.rows[r];
            // pivot column of this row
            std::uint32_t p = 0;
            while (p < ncols + nrows && F.is_zero(lin::row_entry(F, row, p))) ++p;
            if (p >= ncols) continue;
            auto& out = binv_[p];
            out.assign(nrows, Rational(0));
            for (std::size_t k = 0; k < nrows; ++k)
                out[k] = lin::row_entry(F, row, static_cast<std::uint32_t>(ncols + k));
        }
        for (std::size_t j = 0; j < ncols; ++j)
            if (binv_[j].empty())
                throw Error(ErrorCode::internal_inconsistency, "chart solver: missing pivot row");
    }

    // solves restrict(F) = g; nullopt when g is not a restriction
    std::optional<QPoly> solve(const QPoly& g) const {
        RationalField F;
        const std::size_t nrows = a_.nrows, ncols = binv_.size();
        std::vector<Rational> rhs(nrows, Rational(0));
        for (const auto& [m, c] : g.terms()) {
            auto it = xrow_.find(m);
            if (it == xrow_.end()) return std::nullopt; // monomial outside the column space
            rhs[it->second] = c;
        }
        std::vector<Rational> y(ncols, Rational(0));
        for (std::size_t j = 0; j < ncols; ++j) {
            Rational acc = 0;
            const auto& b = binv_[j];
            for (std::size_t k = 0; k < nrows; ++k)
                if (!rhs[k].is_zero() && !b[k].is_zero()) acc += b[k] * rhs[k];
            y[j] = acc;
        }
        // consistency: A y == rhs
        for (std::size_t r = 0; r < nrows; ++r) {
            Rational acc = 0;
            const auto& row = a_.rows[r];
            for (std::size_t t = 0; t < row.idx.size(); ++t) acc += row.val[t] * y[row.idx[t]];
            if (acc != rhs[r]) return std::nullopt;
        }
        return piece_->to_qpoly(F, y);
    }

private:
    const GradedPiece<RationalField>* piece_;
    std::map<Monomial, std::size_t> xrow_;
    SparseMatrix<RationalField> a_;
    std::vector<std::vector<Rational>> binv_;
};

// ---------------------------------------------------------------------------
// Per-field computation session: graded pieces built on demand and shared.

template <class F>
class RingEngine {
public:
    RingEngine(const GrassCtx& ctx, F field) : ctx_(ctx), field_(std::move(field)) {}

    const GrassCtx& ctx() const { return ctx_; }
    const F& field() const { return field_; }

    const GradedPiece<F>& piece(int d) {
        auto it = pieces_.find(d);
        if (it != pieces_.end()) return *it->second;
        auto p = load_or_build(d);
        auto [it2, ok] = pieces_.emplace(d, std::move(p));
        (void)ok;
        return *it2->second;
    }

    std::vector<typename F::Elem> normal_form(const QPoly& f, int d) {
        return piece(d).nf_from_qpoly(field_, f);
    }

    // hook used by the disk cache (see cache.hpp); returns nullptr when absent
    std::function<std::shared_ptr<const GradedPiece<F>>(int)> cache_loader;
    std::function<void(int, const GradedPiece<F>&)> cache_saver;

private:
    std::shared_ptr<const GradedPiece<F>> load_or_build(int d) {
        if (cache_loader) {
            if (auto p = cache_loader(d)) return p;
        }
        auto p = std::make_shared<const GradedPiece<F>>(field_, ctx_, d);
        if (cache_saver) cache_saver(d, *p);
        return p;
    }

    const GrassCtx& ctx_;
    F field_;
    std::map<int, std::shared_ptr<const GradedPiece<F>>> pieces_;
};

// spec-level convenience wrappers

template <class F>
std::vector<typename F::Elem> normal_form(RingEngine<F>& eng, const QPoly& f, int d) {
    return eng.normal_form(f, d);
}

inline std::vector<Rational> plucker_relation_coeffs(const GrassCtx& ctx, std::size_t r) {
    RationalField F;
    std::vector<Rational> v(ctx.monomials(2)->size(), Rational(0));
    lin::scatter_row(F, v, ctx.relation_space().rows()[r]);
    return v;
}

} // namespace grassjac
