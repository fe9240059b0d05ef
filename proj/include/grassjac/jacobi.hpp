#pragma once

#include <memory>
#include <string>
#include <vector>

#include "grassjac/forms.hpp"
#include "grassjac/fp.hpp"

namespace grassjac {

// X = (sigma = 0) in |O(a)| with sigma a nonzero normal-form section.
// Theorem-grade operations need a > l, which is enforced here uniformly.
struct Hypersurface {
    const GrassCtx* ctx = nullptr;
    int a = 0;
    QPoly sigma;
    std::uint64_t seed = 0;
    double sparsity = 1.0;

    int top_degree() const { return (ctx->dim() + 1) * a - 2 * (ctx->l() + 1); }
    int adjoint_degree() const { return 2 * ctx->dim() + a - ctx->l() - 1; }
};

// deterministic sparse random section, normal-form support, nonzero
inline QPoly random_section(RingEngine<RationalField>& eng, int d, Rng rng, double sparsity = 1.0) {
    const auto& piece = eng.piece(d);
    const auto& mono = piece.monomials();
    const std::uint64_t cut =
        static_cast<std::uint64_t>(sparsity * 1000000.0 < 0 ? 0 : sparsity * 1000000.0);
    for (std::uint64_t nonce = 0;; ++nonce) {
        Rng draw = rng.fork("section", nonce);
        QPoly f(eng.ctx().nvars());
        for (std::uint32_t id : piece.complement()) {
            if (draw.below(1000000) >= cut) continue;
            Rational c(draw.range(-9, 9));
            if (c.is_zero()) c = 1;
            f.add_term(mono.monomial(id), c);
        }
        if (!f.is_zero()) return f;
    }
}

inline Hypersurface random_hypersurface(RingEngine<RationalField>& eng, int a, std::uint64_t seed,
                                        double sparsity = 1.0) {
    const auto& ctx = eng.ctx();
    if (a <= ctx.l())
        throw HypothesisError("hypersurface degree must satisfy a > l (a=" + std::to_string(a) +
                              ", l=" + std::to_string(ctx.l()) + ")");
    Hypersurface h;
    h.ctx = &ctx;
    h.a = a;
    h.seed = seed;
    h.sparsity = sparsity;
    h.sigma = random_section(eng, a, Rng(seed).fork("sigma"), sparsity);
    return h;
}

inline Hypersurface make_hypersurface(RingEngine<RationalField>& eng, int a, QPoly sigma) {
    const auto& ctx = eng.ctx();
    if (a <= ctx.l()) throw HypothesisError("hypersurface degree must satisfy a > l");
    Hypersurface h;
    h.ctx = &ctx;
    h.a = a;
    auto nf = eng.piece(a).nf_from_qpoly(RationalField{}, sigma);
    h.sigma = eng.piece(a).to_qpoly(RationalField{}, nf);
    if (h.sigma.is_zero()) throw HypothesisError("hypersurface section is zero mod the ideal");
    return h;
}

// ---------------------------------------------------------------------------
// Per-field session: ring engine plus the sigma-independent twisted-field
// bases, shared by every hypersurface computed over this field.

template <class F>
class FieldSession {
public:
    FieldSession(const GrassCtx& ctx, F field) : ring_(ctx, std::move(field)) {}

    RingEngine<F>& ring() { return ring_; }
    const F& field() const { return ring_.field(); }
    const GrassCtx& ctx() const { return ring_.ctx(); }

    const ThetaBasis<F>& theta(int e) {
        auto it = theta_.find(e);
        if (it != theta_.end()) return *it->second;
        std::shared_ptr<const ThetaBasis<F>> built;
        if (theta_loader) built = theta_loader(e);
        if (!built)
            built = std::make_shared<const ThetaBasis<F>>(theta_sections_basis(ring_, e));
        if (theta_saver) theta_saver(e, *built);
        auto [it2, ok] = theta_.emplace(e, std::move(built));
        (void)ok;
        return *it2->second;
    }

    std::function<std::shared_ptr<const ThetaBasis<F>>(int)> theta_loader;
    std::function<void(int, const ThetaBasis<F>&)> theta_saver;

private:
    RingEngine<F> ring_;
    std::map<int, std::shared_ptr<const ThetaBasis<F>>> theta_;
};

// Degree-m slice of the pseudo-Jacobi ideal as a subspace of S_m in
// normal-form coordinates.
template <class F>
struct JacobiPiece {
    int m = 0;
    std::size_t ambient = 0; // dim S_m
    Subspace<F> space;
    std::string generators;
};

template <class F>
class JacobiEngine {
public:
    JacobiEngine(FieldSession<F>& session, const Hypersurface& h) : s_(&session), h_(&h) {
        const auto& ctx = session.ctx();
        if (h.ctx != &ctx)
            throw Error(ErrorCode::internal_inconsistency, "hypersurface belongs to another context");
        const F& field = session.field();
        for (std::size_t I = 0; I < ctx.nvars(); ++I) {
            dsigma_.push_back(derivative(h.sigma, I));
            std::vector<std::pair<Monomial, typename F::Elem>> terms;
            for (const auto& [m, c] : dsigma_.back().terms())
                terms.emplace_back(m, field.from_rational(c));
            dsigma_terms_.push_back(std::move(terms));
        }
        for (const auto& [m, c] : h.sigma.terms())
            sigma_terms_.emplace_back(m, field.from_rational(c));
    }

    const Hypersurface& hypersurface() const { return *h_; }
    FieldSession<F>& session() { return *s_; }

    const JacobiPiece<F>& piece(int m) {
        auto it = pieces_.find(m);
        if (it != pieces_.end()) return *it->second;
        auto p = std::make_shared<const JacobiPiece<F>>(build_piece(m));
        auto [it2, ok] = pieces_.emplace(m, std::move(p));
        (void)ok;
        return *it2->second;
    }

    // dim R_{O(m)} and the coset representatives (monomial ids of S_m
    // complement positions not pivoted by J_m)
    std::pair<std::size_t, std::vector<std::uint32_t>> quotient_piece(int m) {
        const auto& jp = piece(m);
        const auto& gp = s_->ring().piece(m);
        std::vector<std::uint32_t> reps;
        for (std::uint32_t free : jp.space.free_columns()) reps.push_back(gp.complement()[free]);
        return {jp.ambient - jp.space.rank(), reps};
    }

    bool contains(int m, const std::vector<typename F::Elem>& nf_vec) {
        return piece(m).space.contains(s_->field(), nf_vec);
    }

    // socle functional on all degree-m_top monomials, normalized to 1 on the
    // unique coset generator; empty when dim R_top != 1
    std::vector<typename F::Elem> socle_functional() {
        const int mt = h_->top_degree();
        const auto& jp = piece(mt);
        const auto& gp = s_->ring().piece(mt);
        const F& field = s_->field();
        if (jp.ambient - jp.space.rank() != 1) return {};
        const std::uint32_t c0 = jp.space.free_columns()[0];
        std::vector<typename F::Elem> lam_nf(jp.ambient, field.zero());
        lam_nf[c0] = field.one();
        for (std::size_t r = 0; r < jp.space.rank(); ++r) {
            const auto v = lin::row_entry(field, jp.space.rows()[r], c0);
            if (!field.is_zero(v)) lam_nf[jp.space.pivots()[r]] = field.neg(v);
        }
        // extend to every monomial through the normal form
        std::vector<typename F::Elem> lam_full(gp.n_monomials(), field.zero());
        for (std::size_t i = 0; i < gp.n_monomials(); ++i) {
            const std::int32_t ci = gp.comp_index(i);
            if (ci >= 0) {
                lam_full[i] = lam_nf[static_cast<std::size_t>(ci)];
            } else {
                const auto* row = gp.nf_row(i);
                typename F::Elem acc = field.zero();
                for (std::size_t j = 0; j < jp.ambient; ++j)
                    if (!field.is_zero(row[j])) acc = field.add(acc, field.mul(row[j], lam_nf[j]));
                lam_full[i] = acc;
            }
        }
        return lam_full;
    }

private:
    JacobiPiece<F> build_piece(int m) {
        const F& field = s_->field();
        const auto& gp = s_->ring().piece(m);
        JacobiPiece<F> out;
        out.m = m;
        out.ambient = gp.dim();
        if (m < h_->a) {
            out.space = Subspace<F>(gp.dim());
            out.generators = "zero (m < a)";
            return out;
        }
        const int e = m - h_->a;
        const auto& sg = s_->ring().piece(e); // multipliers S_e
        const auto& theta = s_->theta(e);

        SpanBuilder<F> span(field, gp.dim());

        // sigma-multiple generators: nf(g * sigma) over the complement
        // monomial basis of S_e
        auto& scratch = span.scratch();
        const auto& mono_e = sg.monomials();
        for (std::uint32_t g : sg.complement()) {
            span.clear_scratch();
            const std::uint8_t* ge = mono_e.exps(g);
            for (const auto& [sm, sc] : sigma_terms_)
                gp.accumulate_nf(field, scratch, gp.monomials().rank_sum(ge, sm.e.data()), sc);
            span.insert_scratch();
        }

        // twisted-field images: candidate table w(I, t) = nf(m_t * dsigma_I),
        // then one row per basis field via its kernel combination
        const std::size_t k1 = theta.image_complement.size();
        std::vector<Row<F>> w(theta.candidates());
        {
            std::vector<typename F::Elem> acc(gp.dim(), field.zero());
            for (std::size_t I = 0; I < theta.n_vars; ++I) {
                for (std::size_t t = 0; t < k1; ++t) {
                    std::fill(acc.begin(), acc.end(), field.zero());
                    const std::uint8_t* me = theta.image_mono->exps(theta.image_complement[t]);
                    for (const auto& [sm, sc] : dsigma_terms_[I])
                        gp.accumulate_nf(field, acc, gp.monomials().rank_sum(me, sm.e.data()), sc);
                    w[I * k1 + t] = lin::harvest(field, acc);
                }
            }
        }
        for (const auto& combo : theta.combos) {
            span.clear_scratch();
            if (combo.is_dense) {
                for (std::size_t t = 0; t < combo.val.size(); ++t) {
                    if (field.is_zero(combo.val[t])) continue;
                    lin::submul_row(field, scratch, field.neg(combo.val[t]), w[combo.base + t]);
                }
            } else {
                for (std::size_t t = 0; t < combo.idx.size(); ++t)
                    lin::submul_row(field, scratch, field.neg(combo.val[t]), w[combo.idx[t]]);
            }
            span.insert_scratch();
        }

        out.space = span.finish();
        out.generators = "theta_sections(" + std::to_string(e) + ") images + sigma*S_" +
                         std::to_string(e);
        // sigma-multiples of the ideal slice are already zero in nf
        // coordinates; the Euler field reproduces a*sigma, so nf(sigma) lies
        // in J_a by construction.
        return out;
    }

    FieldSession<F>* s_;
    const Hypersurface* h_;
    std::vector<QPoly> dsigma_;
    std::vector<std::vector<std::pair<Monomial, typename F::Elem>>> dsigma_terms_;
    std::vector<std::pair<Monomial, typename F::Elem>> sigma_terms_;
    std::map<int, std::shared_ptr<const JacobiPiece<F>>> pieces_;
};

// ---------------------------------------------------------------------------
// Certified two-prime wrappers. Membership mod p can only err towards "yes"
// (or through an unlucky prime); two independent primes must agree or the
// run aborts.

struct CertifiedVerdicts {
    bool verdict = false;
    std::vector<std::uint64_t> primes;
};

class CertifiedJacobi {
public:
    CertifiedJacobi(const GrassCtx& ctx, const Hypersurface& h, std::uint64_t p1, std::uint64_t p2)
        : sa_(ctx, FpField(p1)), sb_(ctx, FpField(p2)), ja_(sa_, h), jb_(sb_, h) {}

    FieldSession<FpField>& session_a() { return sa_; }
    FieldSession<FpField>& session_b() { return sb_; }
    JacobiEngine<FpField>& engine_a() { return ja_; }
    JacobiEngine<FpField>& engine_b() { return jb_; }
    std::vector<std::uint64_t> primes() const {
        return {sa_.field().modulus(), sb_.field().modulus()};
    }

    // certified dim R_{O(m)}
    std::size_t quotient_dim_certified(int m) {
        auto da = ja_.quotient_piece(m).first;
        auto db = jb_.quotient_piece(m).first;
        if (da != db)
            throw UnluckyPrimeError("jacobi quotient dims disagree at degree " + std::to_string(m) +
                                    " (" + std::to_string(da) + " vs " + std::to_string(db) + ")");
        return da;
    }

    bool membership_certified(int m, const QPoly& f) {
        check_ranks(m);
        const bool ra = ja_.contains(m, sa_.ring().piece(m).nf_from_qpoly(sa_.field(), f));
        const bool rb = jb_.contains(m, jb_host_nf(m, f));
        if (ra != rb)
            throw UnluckyPrimeError("membership verdicts disagree at degree " + std::to_string(m));
        return ra;
    }

private:
    std::vector<FpField::Elem> jb_host_nf(int m, const QPoly& f) {
        return sb_.ring().piece(m).nf_from_qpoly(sb_.field(), f);
    }
    void check_ranks(int m) {
        if (ja_.piece(m).space.rank() != jb_.piece(m).space.rank())
            throw UnluckyPrimeError("jacobi ranks disagree at degree " + std::to_string(m));
    }

    FieldSession<FpField> sa_, sb_;
    JacobiEngine<FpField> ja_, jb_;
};

// criterion ii) of the main equivalence: R defines the trivial deformation
// iff it lies in the degree-a slice of the pseudo-Jacobi ideal
inline bool deformation_trivial(CertifiedJacobi& cj, const Hypersurface& h, const QPoly& r) {
    return cj.membership_certified(h.a, r);
}

// criterion iv): R * wedge(forms) lies in the slice at degree 2N + a - l - 1
inline bool adjoint_membership(CertifiedJacobi& cj, const Hypersurface& h,
                               const WedgeCalculator& calc,
                               const std::vector<const OneForm*>& forms, const QPoly& r,
                               VolumeSection* witness = nullptr) {
    VolumeSection vol = calc.wedge(forms);
    if (vol.rep.is_zero())
        throw HypothesisError("degenerate W: the chosen one-forms have zero wedge");
    if (witness) *witness = vol;
    return cj.membership_certified(h.adjoint_degree(), mul(r, vol.rep));
}

// ---------------------------------------------------------------------------
// Generalized Macaulay pairing R_{O(d1)} x R_{O(d2)} -> R_top = C.

struct PairingReport {
    int c = 0;
    int d1 = 0, d2 = 0, d_top = 0;
    std::size_t dim_r1 = 0, dim_r2 = 0, dim_top = 0;
    std::size_t rank = 0;
    bool perfect = false;
    std::string gate; // which theorem hypothesis admitted the run
    std::vector<std::uint64_t> primes;
};

inline std::string macaulay_gate(const GrassCtx& ctx, int a, int c) {
    if (c < 0) return "";
    const int N = ctx.dim(), l = ctx.l();
    const int d2 = (N + 1 - c) * a - 2 * (l + 1);
    if (c * a < 0 || d2 < 0) return "";
    if (a >= l + c + 2) return "a >= l+c+2";
    if (ctx.s() != 1 && a > l && (c == 0 || c == 1)) return "s != 1, a > l, c <= 1";
    if (ctx.s() == 1 && a > l) return "classical Macaulay on projective space";
    return "";
}

template <class F>
PairingReport macaulay_pairing_single(JacobiEngine<F>& je, int c) {
    const Hypersurface& h = je.hypersurface();
    const GrassCtx& ctx = *h.ctx;
    const F& field = je.session().field();
    const std::string gate = macaulay_gate(ctx, h.a, c);
    if (gate.empty())
        throw HypothesisError("macaulay_pairing: hypotheses fail for a=" + std::to_string(h.a) +
                              ", c=" + std::to_string(c) + ", l=" + std::to_string(ctx.l()) +
                              ", s=" + std::to_string(ctx.s()) +
                              " (need a >= l+c+2, or c <= 1 with a > l)");
    PairingReport rep;
    rep.c = c;
    rep.gate = gate;
    rep.d1 = c * h.a;
    rep.d_top = h.top_degree();
    rep.d2 = rep.d_top - rep.d1;

    auto [r1, reps1] = je.quotient_piece(rep.d1);
    auto [r2, reps2] = je.quotient_piece(rep.d2);
    rep.dim_r1 = r1;
    rep.dim_r2 = r2;
    rep.dim_top = je.quotient_piece(rep.d_top).first;

    if (rep.dim_top != 1) {
        rep.perfect = false;
        return rep;
    }
    auto lam = je.socle_functional();
    const auto& mono_top = je.session().ring().piece(rep.d_top).monomials();
    const auto& mono1 = je.session().ring().piece(rep.d1).monomials();
    const auto& mono2 = je.session().ring().piece(rep.d2).monomials();

    SpanBuilder<F> span(field, reps2.size());
    std::vector<typename F::Elem> rowv(reps2.size(), field.zero());
    for (std::size_t i = 0; i < reps1.size(); ++i) {
        for (std::size_t j = 0; j < reps2.size(); ++j) {
            const std::size_t prod =
                mono_top.rank_sum(mono1.exps(reps1[i]), mono2.exps(reps2[j]));
            rowv[j] = lam[prod];
        }
        auto copy = rowv;
        span.insert(copy);
    }
    rep.rank = span.rank();
    rep.perfect = (rep.dim_r1 == rep.dim_r2) && (rep.rank == rep.dim_r1) && (rep.dim_top == 1);
    return rep;
}

inline PairingReport macaulay_pairing(CertifiedJacobi& cj, int c) {
    PairingReport a = macaulay_pairing_single(cj.engine_a(), c);
    PairingReport b = macaulay_pairing_single(cj.engine_b(), c);
    if (a.dim_r1 != b.dim_r1 || a.dim_r2 != b.dim_r2 || a.dim_top != b.dim_top ||
        a.rank != b.rank)
        throw UnluckyPrimeError("macaulay pairing reports disagree between primes");
    a.primes = cj.primes();
    return a;
}

// ---------------------------------------------------------------------------
// Projective-normality style multiplication surjectivity:
// S_{(N-1)a - l - 1} x S_{a - l - 1} -> S_{Na - 2l - 2}.

struct SurjectivityReport {
    int d1 = 0, d2 = 0, d_top = 0;
    std::size_t span = 0, target = 0;
    bool surjective = false;
};

template <class F>
SurjectivityReport multiplication_surjectivity(RingEngine<F>& eng, int a) {
    const GrassCtx& ctx = eng.ctx();
    if (a <= ctx.l()) throw HypothesisError("multiplication_surjectivity requires a > l");
    const int N = ctx.dim(), l = ctx.l();
    SurjectivityReport rep;
    rep.d1 = (N - 1) * a - l - 1;
    rep.d2 = a - l - 1;
    rep.d_top = N * a - 2 * l - 2;
    const F& field = eng.field();
    const auto& p1 = eng.piece(rep.d1);
    const auto& p2 = eng.piece(rep.d2);
    const auto& pt = eng.piece(rep.d_top);
    rep.target = pt.dim();

    SpanBuilder<F> span(field, pt.dim());
    auto& scratch = span.scratch();
    for (std::uint32_t i : p1.complement()) {
        for (std::uint32_t j : p2.complement()) {
            span.clear_scratch();
            const std::size_t prod = pt.monomials().rank_sum(p1.monomials().exps(i),
                                                             p2.monomials().exps(j));
            pt.accumulate_nf(field, scratch, prod, field.one());
            span.insert_scratch();
            if (span.rank() == pt.dim()) break;
        }
        if (span.rank() == pt.dim()) break;
    }
    rep.span = span.rank();
    rep.surjective = rep.span == rep.target;
    return rep;
}

// ---------------------------------------------------------------------------
// The four-way equivalence experiment: criteria ii) and iv) are computed on
// every trial; i) and iii) are logged as implied by the proven equivalences.

struct TrialRecord {
    std::size_t index = 0;
    bool from_ideal = false;
    bool trivial_ii = false;
    bool adjoint_iv = false;
    bool agree = false;
    std::vector<std::size_t> w_indices;
    QPoly r;
};

struct ExperimentReport {
    std::size_t trials = 0;
    std::vector<TrialRecord> rows;
    bool all_agree = true;
    bool ideal_draws_all_trivial = true;
    std::vector<std::uint64_t> primes;
};

// environment shared by trials: rational engine for draws and wedges
struct ExperimentEnv {
    RingEngine<RationalField>* ring_q = nullptr;
    const std::vector<OneForm>* oneforms = nullptr;
    const WedgeCalculator* calc = nullptr;
    std::vector<Derivation> theta0_q; // twist-0 fields over Q for ideal draws
};

inline QPoly draw_from_ideal(const Hypersurface& h, const ExperimentEnv& env, Rng rng) {
    // fixed mixture: one sigma-multiple and two derivation images with
    // random rational coefficients
    QPoly r = h.sigma.scaled(random_small_rational(rng));
    for (int k = 0; k < 2; ++k) {
        std::vector<QPoly> imgs(h.ctx->nvars(), QPoly(h.ctx->nvars()));
        for (int pick = 0; pick < 3; ++pick) {
            const auto& d = env.theta0_q[rng.below(env.theta0_q.size())];
            const Rational c = random_small_rational(rng);
            for (std::size_t I = 0; I < imgs.size(); ++I) imgs[I] += d.images[I].scaled(c);
        }
        r += apply_derivation(Derivation::from_images(std::move(imgs)), h.sigma);
    }
    return r;
}

inline ExperimentReport main_theorem_experiment(CertifiedJacobi& cj, const Hypersurface& h,
                                                const ExperimentEnv& env, std::size_t trials,
                                                Rng rng) {
    const GrassCtx& ctx = *h.ctx;
    if (!(1 < ctx.s() && ctx.s() < ctx.l()))
        throw HypothesisError("main theorem experiment needs 1 < s < l");
    ExperimentReport rep;
    rep.trials = trials;
    rep.primes = cj.primes();
    const std::size_t n = static_cast<std::size_t>(ctx.dim());
    const std::size_t half = (trials + 1) / 2;

    for (std::size_t t = 0; t < trials; ++t) {
        TrialRecord row;
        row.index = t;
        row.from_ideal = t < half;
        Rng trial_rng = rng.fork("trial", t);
        row.r = row.from_ideal ? draw_from_ideal(h, env, trial_rng.fork("ideal"))
                               : random_section(*env.ring_q, h.a, trial_rng.fork("generic"), 1.0);

        // fresh generic N-subset of the one-form basis, redrawn if degenerate
        std::vector<std::size_t> pick(env.oneforms->size());
        for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
        for (std::uint64_t redraw = 0;; ++redraw) {
            Rng wr = trial_rng.fork("w", redraw);
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t j = i + wr.below(pick.size() - i);
                std::swap(pick[i], pick[j]);
            }
            std::vector<const OneForm*> forms;
            forms.reserve(n);
            row.w_indices.assign(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n));
            for (std::size_t i = 0; i < n; ++i) forms.push_back(&(*env.oneforms)[pick[i]]);
            try {
                row.adjoint_iv = adjoint_membership(cj, h, *env.calc, forms, row.r);
                break;
            } catch (const HypothesisError&) {
                if (redraw > 16)
                    throw Error(ErrorCode::internal_inconsistency,
                                "could not draw a nondegenerate W from the one-form basis");
            }
        }
        row.trivial_ii = deformation_trivial(cj, h, row.r);
        row.agree = (row.trivial_ii == row.adjoint_iv);
        rep.all_agree = rep.all_agree && row.agree;
        if (row.from_ideal) rep.ideal_draws_all_trivial = rep.ideal_draws_all_trivial && row.trivial_ii;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace grassjac
