#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "grassjac/errors.hpp"

namespace grassjac {

// One stored matrix/subspace row. Either sparse (parallel idx/val arrays,
// idx strictly increasing, no explicit zeros) or dense over the column
// window [base, base + val.size()).
template <class F>
struct Row {
    std::vector<std::uint32_t> idx;
    std::vector<typename F::Elem> val;
    std::uint32_t base = 0;
    bool is_dense = false;

    std::size_t nnz(const F& field) const {
        if (!is_dense) return idx.size();
        std::size_t n = 0;
        for (const auto& v : val)
            if (!field.is_zero(v)) ++n;
        return n;
    }
};

namespace lin {

// scratch -= c * row
template <class F>
inline void submul_row(const F& field, std::vector<typename F::Elem>& scratch,
                       const typename F::Elem& c, const Row<F>& row) {
    if (row.is_dense) {
        const std::size_t n = row.val.size();
        auto* s = scratch.data() + row.base;
        const auto* v = row.val.data();
        for (std::size_t i = 0; i < n; ++i) {
            if (!field.is_zero(v[i])) s[i] = field.sub(s[i], field.mul(c, v[i]));
        }
    } else {
        const std::size_t n = row.idx.size();
        for (std::size_t i = 0; i < n; ++i) {
            auto& s = scratch[row.idx[i]];
            s = field.sub(s, field.mul(c, row.val[i]));
        }
    }
}

template <class F>
inline void scatter_row(const F& field, std::vector<typename F::Elem>& scratch, const Row<F>& row) {
    std::fill(scratch.begin(), scratch.end(), field.zero());
    if (row.is_dense) {
        std::copy(row.val.begin(), row.val.end(), scratch.begin() + row.base);
    } else {
        for (std::size_t i = 0; i < row.idx.size(); ++i) scratch[row.idx[i]] = row.val[i];
    }
}

// pack scratch[from..width) into a row, going dense when indices would
// cost more than they save
template <class F>
inline Row<F> harvest(const F& field, const std::vector<typename F::Elem>& scratch,
                      std::uint32_t from = 0) {
    const std::size_t width = scratch.size();
    std::size_t nnz = 0;
    for (std::size_t i = from; i < width; ++i)
        if (!field.is_zero(scratch[i])) ++nnz;
    Row<F> out;
    if (nnz * 3 >= width - from) {
        out.is_dense = true;
        out.base = from;
        out.val.assign(scratch.begin() + from, scratch.end());
        while (!out.val.empty() && field.is_zero(out.val.back())) out.val.pop_back();
    } else {
        out.idx.reserve(nnz);
        out.val.reserve(nnz);
        for (std::size_t i = from; i < width; ++i) {
            if (!field.is_zero(scratch[i])) {
                out.idx.push_back(static_cast<std::uint32_t>(i));
                out.val.push_back(scratch[i]);
            }
        }
    }
    return out;
}

template <class F>
inline typename F::Elem row_entry(const F& field, const Row<F>& row, std::uint32_t col) {
    if (row.is_dense) {
        if (col < row.base || col >= row.base + row.val.size()) return field.zero();
        return row.val[col - row.base];
    }
    auto it = std::lower_bound(row.idx.begin(), row.idx.end(), col);
    if (it != row.idx.end() && *it == col)
        return row.val[static_cast<std::size_t>(it - row.idx.begin())];
    return field.zero();
}

} // namespace lin

template <class F>
struct SparseMatrix {
    std::size_t nrows = 0;
    std::size_t ncols = 0;
    std::vector<Row<F>> rows;

    static SparseMatrix zero(std::size_t r, std::size_t c) {
        SparseMatrix m;
        m.nrows = r;
        m.ncols = c;
        m.rows.resize(r);
        return m;
    }

    static SparseMatrix identity(const F& field, std::size_t n) {
        SparseMatrix m = zero(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.rows[i].idx.push_back(static_cast<std::uint32_t>(i));
            m.rows[i].val.push_back(field.one());
        }
        return m;
    }

    void set(const F& field, std::size_t r, std::size_t c, const typename F::Elem& v) {
        if (field.is_zero(v)) return;
        rows[r].idx.push_back(static_cast<std::uint32_t>(c));
        rows[r].val.push_back(v);
    }

    void sort_rows() {
        for (auto& row : rows) {
            if (row.is_dense) continue;
            std::vector<std::size_t> perm(row.idx.size());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
            std::sort(perm.begin(), perm.end(),
                      [&](std::size_t a, std::size_t b) { return row.idx[a] < row.idx[b]; });
            Row<F> out;
            out.idx.reserve(row.idx.size());
            out.val.reserve(row.val.size());
            for (std::size_t i : perm) {
                out.idx.push_back(row.idx[i]);
                out.val.push_back(std::move(row.val[i]));
            }
            row = std::move(out);
        }
    }
};

// Row space in reduced row echelon form: pivots strictly increasing,
// pivot entries 1, pivot columns cleared in every other row.
template <class F>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }
    const std::vector<Row<F>>& rows() const { return rows_; }

    std::int64_t pivot_row_of(std::uint32_t col) const {
        if (col >= pivot_of_col_.size()) return -1;
        return pivot_of_col_[col];
    }

    void reduce(const F& field, std::vector<typename F::Elem>& scratch) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const auto c = scratch[pivots_[r]];
            if (!field.is_zero(c)) lin::submul_row(field, scratch, c, rows_[r]);
        }
    }

    bool contains(const F& field, std::vector<typename F::Elem> v) const {
        if (v.size() != ambient_)
            throw Error(ErrorCode::internal_inconsistency, "membership: dimension mismatch");
        reduce(field, v);
        for (const auto& x : v)
            if (!field.is_zero(x)) return false;
        return true;
    }

    std::vector<std::uint32_t> free_columns() const {
        std::vector<std::uint32_t> out;
        out.reserve(ambient_ - rows_.size());
        std::size_t r = 0;
        for (std::uint32_t c = 0; c < ambient_; ++c) {
            if (r < pivots_.size() && pivots_[r] == c) {
                ++r;
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    void adopt(std::size_t ambient, std::vector<Row<F>> rows, std::vector<std::uint32_t> pivots) {
        ambient_ = ambient;
        rows_ = std::move(rows);
        pivots_ = std::move(pivots);
        pivot_of_col_.assign(ambient_, -1);
        for (std::size_t r = 0; r < pivots_.size(); ++r)
            pivot_of_col_[pivots_[r]] = static_cast<std::int64_t>(r);
    }

private:
    std::size_t ambient_ = 0;
    std::vector<Row<F>> rows_;
    std::vector<std::uint32_t> pivots_;
    std::vector<std::int64_t> pivot_of_col_;
};

// Incremental row-space accumulator: rows reduce against the pivots present
// at insertion time; finish() back-substitutes bottom-up to the unique RREF.
template <class F>
class SpanBuilder {
public:
    SpanBuilder(const F& field, std::size_t width) : field_(field), width_(width) {
        pivot_row_.assign(width, -1);
        scratch_.assign(width, field.zero());
    }

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }
    std::vector<typename F::Elem>& scratch() { return scratch_; }

    void clear_scratch() { std::fill(scratch_.begin(), scratch_.end(), field_.zero()); }

    // consumes v; returns the new pivot column or -1 if dependent
    std::int64_t insert(std::vector<typename F::Elem>& v) {
        for (std::uint32_t c = 0; c < width_; ++c) {
            if (field_.is_zero(v[c])) continue;
            const std::int64_t r = pivot_row_[c];
            if (r < 0) {
                const auto lead_inv = field_.inv(v[c]);
                for (std::uint32_t j = c; j < width_; ++j)
                    if (!field_.is_zero(v[j])) v[j] = field_.mul(v[j], lead_inv);
                rows_.push_back(lin::harvest(field_, v, c));
                pivot_col_.push_back(c);
                pivot_row_[c] = static_cast<std::int64_t>(rows_.size() - 1);
                return c;
            }
            const auto coef = v[c];
            lin::submul_row(field_, v, coef, rows_[static_cast<std::size_t>(r)]);
            v[c] = field_.zero();
        }
        return -1;
    }

    std::int64_t insert_scratch() { return insert(scratch_); }

    std::int64_t insert_sparse(const Row<F>& row) {
        lin::scatter_row(field_, scratch_, row);
        return insert(scratch_);
    }

    Subspace<F> finish() {
        std::vector<std::size_t> by_pivot(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) by_pivot[i] = i;
        std::sort(by_pivot.begin(), by_pivot.end(),
                  [&](std::size_t a, std::size_t b) { return pivot_col_[a] < pivot_col_[b]; });

        // bottom-up: rows with larger pivots are already fully reduced when
        // subtracted, so their support is {pivot} plus non-pivot columns and
        // each pass is final
        std::vector<bool> done(rows_.size(), false);
        for (std::size_t k = by_pivot.size(); k-- > 0;) {
            const std::size_t i = by_pivot[k];
            lin::scatter_row(field_, scratch_, rows_[i]);
            for (std::uint32_t c = pivot_col_[i] + 1; c < width_; ++c) {
                if (field_.is_zero(scratch_[c])) continue;
                const std::int64_t r = pivot_row_[c];
                if (r < 0 || !done[static_cast<std::size_t>(r)]) continue;
                const auto coef = scratch_[c];
                lin::submul_row(field_, scratch_, coef, rows_[static_cast<std::size_t>(r)]);
                scratch_[c] = field_.zero();
            }
            rows_[i] = lin::harvest(field_, scratch_, pivot_col_[i]);
            done[i] = true;
        }

        std::vector<Row<F>> rows_sorted;
        std::vector<std::uint32_t> pivots_sorted;
        rows_sorted.reserve(rows_.size());
        pivots_sorted.reserve(rows_.size());
        for (std::size_t i : by_pivot) {
            rows_sorted.push_back(std::move(rows_[i]));
            pivots_sorted.push_back(pivot_col_[i]);
        }
        Subspace<F> out;
        out.adopt(width_, std::move(rows_sorted), std::move(pivots_sorted));
        rows_.clear();
        pivot_col_.clear();
        pivot_row_.assign(width_, -1);
        return out;
    }

private:
    const F& field_;
    std::size_t width_;
    std::vector<Row<F>> rows_;
    std::vector<std::uint32_t> pivot_col_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<typename F::Elem> scratch_;
};

// Reduced row echelon form. Pivot selection: leftmost nonzero column, then
// the sparsest candidate row (lowest index on ties) — deterministic with
// bounded fill-in.
template <class F>
std::pair<SparseMatrix<F>, std::size_t> rref(const F& field, const SparseMatrix<F>& m) {
    const std::size_t w = m.ncols;
    std::vector<std::vector<typename F::Elem>> work;
    work.reserve(m.nrows);
    std::vector<typename F::Elem> scratch(w, field.zero());
    for (const auto& row : m.rows) {
        lin::scatter_row(field, scratch, row);
        work.push_back(scratch);
    }
    std::vector<bool> used(m.nrows, false);
    std::vector<std::pair<std::uint32_t, std::size_t>> pivots;

    for (std::uint32_t col = 0; col < w; ++col) {
        std::size_t best = m.nrows, best_nnz = 0;
        for (std::size_t r = 0; r < m.nrows; ++r) {
            if (used[r] || field.is_zero(work[r][col])) continue;
            std::size_t nnz = 0;
            for (std::uint32_t c = col; c < w; ++c)
                if (!field.is_zero(work[r][c])) ++nnz;
            if (best == m.nrows || nnz < best_nnz) {
                best = r;
                best_nnz = nnz;
            }
        }
        if (best == m.nrows) continue;
        used[best] = true;
        const auto inv = field.inv(work[best][col]);
        for (std::uint32_t c = col; c < w; ++c)
            if (!field.is_zero(work[best][c])) work[best][c] = field.mul(work[best][c], inv);
        for (std::size_t r = 0; r < m.nrows; ++r) {
            if (r == best || field.is_zero(work[r][col])) continue;
            const auto c0 = work[r][col];
            for (std::uint32_t c = col; c < w; ++c) {
                if (!field.is_zero(work[best][c]))
                    work[r][c] = field.sub(work[r][c], field.mul(c0, work[best][c]));
            }
        }
        pivots.emplace_back(col, best);
    }

    SparseMatrix<F> out = SparseMatrix<F>::zero(pivots.size(), w);
    std::size_t outr = 0;
    for (const auto& [col, r] : pivots) {
        (void)col;
        out.rows[outr] = lin::harvest(field, work[r]);
        ++outr;
    }
    return {out, pivots.size()};
}

template <class F>
Subspace<F> image(const F& field, const SparseMatrix<F>& m) {
    SpanBuilder<F> span(field, m.ncols);
    for (const auto& row : m.rows) span.insert_sparse(row);
    return span.finish();
}

template <class F>
Subspace<F> kernel(const F& field, const SparseMatrix<F>& m) {
    auto [r, rank] = rref(field, m);
    std::vector<std::int64_t> pivot_row(m.ncols, -1);
    for (std::size_t i = 0; i < rank; ++i) {
        const auto& row = r.rows[i];
        std::uint32_t p = 0;
        if (row.is_dense) {
            while (p < m.ncols && field.is_zero(lin::row_entry(field, row, p))) ++p;
        } else {
            p = row.idx.front();
        }
        pivot_row[p] = static_cast<std::int64_t>(i);
    }
    SpanBuilder<F> span(field, m.ncols);
    std::vector<typename F::Elem> v(m.ncols, field.zero());
    for (std::uint32_t f = 0; f < m.ncols; ++f) {
        if (pivot_row[f] >= 0) continue;
        std::fill(v.begin(), v.end(), field.zero());
        v[f] = field.one();
        for (std::uint32_t c = 0; c < m.ncols; ++c) {
            if (pivot_row[c] < 0) continue;
            const auto& row = r.rows[static_cast<std::size_t>(pivot_row[c])];
            v[c] = field.neg(lin::row_entry(field, row, f));
        }
        span.insert(v);
    }
    return span.finish();
}

template <class F>
bool membership(const F& field, const Subspace<F>& s, const std::vector<typename F::Elem>& v) {
    return s.contains(field, v);
}

template <class F>
std::size_t quotient_dim(const F& field, const Subspace<F>& big, const Subspace<F>& small) {
    if (big.ambient() != small.ambient())
        throw Error(ErrorCode::internal_inconsistency, "quotient_dim: ambient mismatch");
    std::vector<typename F::Elem> scratch(big.ambient(), field.zero());
    for (std::size_t r = 0; r < small.rows().size(); ++r) {
        lin::scatter_row(field, scratch, small.rows()[r]);
        if (!big.contains(field, scratch))
            throw Error(ErrorCode::oracle_mismatch,
                        "quotient_dim: containment violated by basis row " + std::to_string(r) +
                            " (pivot column " + std::to_string(small.pivots()[r]) + ")");
    }
    return big.rank() - small.rank();
}

// Augmented elimination for kernels of very wide maps: a row reducing to
// zero yields the combination of previously inserted rows witnessing it.
template <class F>
class KernelBuilder {
public:
    KernelBuilder(const F& field, std::size_t width, std::size_t n_candidates)
        : field_(field), width_(width) {
        pivot_row_.assign(std::max<std::size_t>(width, 1), -1);
        combo_scratch_.assign(n_candidates, field.zero());
    }

    std::optional<Row<F>> insert(std::vector<typename F::Elem>& v, std::size_t k) {
        std::fill(combo_scratch_.begin(), combo_scratch_.end(), field_.zero());
        combo_scratch_[k] = field_.one();
        for (std::uint32_t c = 0; c < width_; ++c) {
            if (field_.is_zero(v[c])) continue;
            const std::int64_t r = pivot_row_[c];
            if (r < 0) {
                const auto inv = field_.inv(v[c]);
                for (std::uint32_t j = c; j < width_; ++j)
                    if (!field_.is_zero(v[j])) v[j] = field_.mul(v[j], inv);
                for (auto& x : combo_scratch_)
                    if (!field_.is_zero(x)) x = field_.mul(x, inv);
                rows_.push_back(lin::harvest(field_, v, c));
                combos_.push_back(lin::harvest(field_, combo_scratch_));
                pivot_row_[c] = static_cast<std::int64_t>(rows_.size() - 1);
                return std::nullopt;
            }
            const auto coef = v[c];
            lin::submul_row(field_, v, coef, rows_[static_cast<std::size_t>(r)]);
            v[c] = field_.zero();
            lin::submul_row(field_, combo_scratch_, coef, combos_[static_cast<std::size_t>(r)]);
        }
        return lin::harvest(field_, combo_scratch_);
    }

    std::size_t rank() const { return rows_.size(); }

private:
    const F& field_;
    std::size_t width_;
    std::vector<Row<F>> rows_;
    std::vector<Row<F>> combos_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<typename F::Elem> combo_scratch_;
};

} // namespace grassjac
