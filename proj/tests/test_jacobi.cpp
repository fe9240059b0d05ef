#include <catch2/catch_amalgamated.hpp>

#include "grassjac/jacobi.hpp"
#include "oracles.hpp"

using namespace grassjac;

namespace {

QPoly fermat_quintic(const GrassCtx& p4) {
    QPoly f(p4.nvars());
    for (std::size_t i = 0; i < p4.nvars(); ++i) f.add_term(Monomial::var(p4.nvars(), i, 5), 1);
    return f;
}

std::pair<std::uint64_t, std::uint64_t> test_primes(std::uint64_t seed) {
    Rng rng(seed);
    auto a = random_prime62(rng);
    auto b = random_prime62(rng);
    return {a, b};
}

} // namespace

TEST_CASE("Fermat quintic on P^4: pseudo-Jacobi slices equal the classical Jacobian ideal") {
    GrassCtx p4 = build_ctx(1, 4);
    RingEngine<RationalField> engq(p4, RationalField{});
    Hypersurface h = make_hypersurface(engq, 5, fermat_quintic(p4));

    auto [pa, pb] = test_primes(101);
    (void)pb;
    FieldSession<FpField> session(p4, FpField(pa));
    JacobiEngine<FpField> je(session, h);

    for (int m = 5; m <= 8; ++m) {
        auto classical = gjtest::classical_jacobian_piece(session.ring(), h.sigma, m);
        const auto& pseudo = je.piece(m);
        INFO("degree " << m);
        REQUIRE(gjtest::subspace_equal(session.field(), classical, pseudo.space));
    }
    REQUIRE(je.quotient_piece(5).first == 101); // 126 - 25
    REQUIRE(je.quotient_piece(0).first == 1);   // J_0 = 0, S_0 = constants
}

TEST_CASE("Fermat quintic: socle dimension one and perfect classical pairing") {
    GrassCtx p4 = build_ctx(1, 4);
    RingEngine<RationalField> engq(p4, RationalField{});
    Hypersurface h = make_hypersurface(engq, 5, fermat_quintic(p4));
    REQUIRE(h.top_degree() == 15);

    auto [pa, pb] = test_primes(103);
    CertifiedJacobi cj(p4, h, pa, pb);
    REQUIRE(cj.quotient_dim_certified(15) == 1);
    REQUIRE(cj.quotient_dim_certified(10) == 101);

    auto rep = macaulay_pairing(cj, 1);
    REQUIRE(rep.d1 == 5);
    REQUIRE(rep.d2 == 10);
    REQUIRE(rep.dim_r1 == 101);
    REQUIRE(rep.dim_r2 == 101);
    REQUIRE(rep.dim_top == 1);
    REQUIRE(rep.rank == 101);
    REQUIRE(rep.perfect);
    REQUIRE(rep.gate == "classical Macaulay on projective space");
}

TEST_CASE("jacobi piece on G(2,4): sigma lies in J_a; slices vanish below degree a") {
    GrassCtx ctx = build_ctx(2, 3);
    RingEngine<RationalField> engq(ctx, RationalField{});
    Hypersurface h = random_hypersurface(engq, 4, 20240817);

    auto [pa, pb] = test_primes(107);
    (void)pb;
    FieldSession<FpField> session(ctx, FpField(pa));
    JacobiEngine<FpField> je(session, h);

    REQUIRE(je.piece(3).space.rank() == 0);
    auto nf_sigma = session.ring().piece(4).nf_from_qpoly(session.field(), h.sigma);
    REQUIRE(je.contains(4, nf_sigma));

    // derivation images of twist zero are generators
    auto fields_q = theta_sections(engq, 0);
    for (int t = 0; t < 3; ++t) {
        QPoly img = apply_derivation(fields_q[static_cast<std::size_t>(t) * 5], h.sigma);
        auto nf = session.ring().piece(4).nf_from_qpoly(session.field(), img);
        REQUIRE(je.contains(4, nf));
    }
}

TEST_CASE("ideal absorption: J_4 * S_1 lands in J_5 on sampled generators") {
    GrassCtx ctx = build_ctx(2, 3);
    RingEngine<RationalField> engq(ctx, RationalField{});
    Hypersurface h = random_hypersurface(engq, 4, 77);

    auto [pa, pb] = test_primes(109);
    (void)pb;
    FieldSession<FpField> session(ctx, FpField(pa));
    JacobiEngine<FpField> je(session, h);
    auto fields_q = theta_sections(engq, 0);

    Rng rng(13);
    for (int t = 0; t < 6; ++t) {
        // rational representative of an element of J_4
        QPoly el = h.sigma.scaled(random_small_rational(rng));
        el += apply_derivation(fields_q[rng.below(fields_q.size())], h.sigma)
                  .scaled(random_small_rational(rng));
        const std::size_t var = rng.below(ctx.nvars());
        QPoly shifted = mul(el, QPoly::variable(ctx.nvars(), var));
        auto nf = session.ring().piece(5).nf_from_qpoly(session.field(), shifted);
        REQUIRE(je.contains(5, nf));
    }
}

TEST_CASE("deformation triviality and adjoint membership agree on G(2,4) samples") {
    GrassCtx ctx = build_ctx(2, 3);
    RingEngine<RationalField> engq(ctx, RationalField{});
    Hypersurface h = random_hypersurface(engq, 4, 424242);
    REQUIRE(h.adjoint_degree() == 8);

    auto [pa, pb] = test_primes(113);
    CertifiedJacobi cj(ctx, h, pa, pb);

    auto basis = oneforms_basis(engq);
    WedgeCalculator calc(engq, default_chart(ctx));
    std::vector<const OneForm*> w = {&basis[0], &basis[1], &basis[2], &basis[3]};

    REQUIRE(deformation_trivial(cj, h, h.sigma));
    REQUIRE(adjoint_membership(cj, h, calc, w, h.sigma));

    auto fields_q = theta_sections(engq, 0);
    QPoly img = apply_derivation(fields_q[7], h.sigma);
    REQUIRE(deformation_trivial(cj, h, img));
    REQUIRE(adjoint_membership(cj, h, calc, w, img));

    // a generic section should be nontrivial, and the two criteria must agree
    QPoly generic = random_section(engq, 4, Rng(555), 1.0);
    const bool ii = deformation_trivial(cj, h, generic);
    const bool iv = adjoint_membership(cj, h, calc, w, generic);
    REQUIRE(ii == iv);
    REQUIRE_FALSE(ii);
}

TEST_CASE("degenerate W is refused") {
    GrassCtx ctx = build_ctx(2, 3);
    RingEngine<RationalField> engq(ctx, RationalField{});
    Hypersurface h = random_hypersurface(engq, 4, 31337);
    auto [pa, pb] = test_primes(127);
    CertifiedJacobi cj(ctx, h, pa, pb);
    auto basis = oneforms_basis(engq);
    WedgeCalculator calc(engq, default_chart(ctx));
    std::vector<const OneForm*> w = {&basis[0], &basis[1], &basis[2], &basis[1]};
    REQUIRE_THROWS_AS(adjoint_membership(cj, h, calc, w, h.sigma), HypothesisError);
}

TEST_CASE("multiplication surjectivity holds on G(2,4), a=4 and P^4, a=5") {
    auto [pa, pb] = test_primes(131);
    (void)pb;
    {
        GrassCtx ctx = build_ctx(2, 3);
        RingEngine<FpField> eng(ctx, FpField(pa));
        auto rep = multiplication_surjectivity(eng, 4);
        REQUIRE(rep.d1 == 8);
        REQUIRE(rep.d2 == 0);
        REQUIRE(rep.d_top == 8);
        REQUIRE(rep.surjective);
    }
    {
        GrassCtx p4 = build_ctx(1, 4);
        RingEngine<FpField> eng(p4, FpField(pa));
        auto rep = multiplication_surjectivity(eng, 5);
        REQUIRE(rep.d1 == 10);
        REQUIRE(rep.d2 == 0);
        REQUIRE(rep.d_top == 10);
        REQUIRE(rep.surjective);
    }
    {
        // all three twists positive exactly when a > l
        GrassCtx ctx = build_ctx(2, 3);
        RingEngine<FpField> eng(ctx, FpField(pa));
        REQUIRE_THROWS_AS(multiplication_surjectivity(eng, 3), HypothesisError);
        for (int a = 4; a <= 6; ++a) {
            REQUIRE((ctx.dim() - 1) * a - ctx.l() - 1 > 0);
            REQUIRE(a - ctx.l() - 1 >= 0);
            REQUIRE(ctx.dim() * a - 2 * ctx.l() - 2 > 0);
        }
    }
}

TEST_CASE("macaulay gate logic refuses out-of-hypothesis runs") {
    GrassCtx ctx = build_ctx(2, 3);
    REQUIRE(macaulay_gate(ctx, 4, 1) == "s != 1, a > l, c <= 1");
    REQUIRE(macaulay_gate(ctx, 4, 0) == "s != 1, a > l, c <= 1");
    REQUIRE(macaulay_gate(ctx, 3, 1).empty());  // a > l fails
    REQUIRE(macaulay_gate(ctx, 4, 2).empty());  // needs a >= l+c+2 = 7
    REQUIRE(macaulay_gate(ctx, 9, 2) == "a >= l+c+2");
    GrassCtx p4 = build_ctx(1, 4);
    REQUIRE(macaulay_gate(p4, 5, 1) == "classical Macaulay on projective space");
    REQUIRE(macaulay_gate(p4, 4, 1).empty());
}

TEST_CASE("random sections are deterministic per seed and independent across seeds") {
    GrassCtx ctx = build_ctx(2, 3);
    RingEngine<RationalField> eng(ctx, RationalField{});
    RationalField F;
    auto s1 = random_section(eng, 4, Rng(1), 1.0);
    auto s1b = random_section(eng, 4, Rng(1), 1.0);
    auto s2 = random_section(eng, 4, Rng(2), 1.0);
    REQUIRE(s1 == s1b);
    REQUIRE_FALSE(s1 == s2);
    REQUIRE(s1.term_count() == 105); // sparsity 1.0: dense over the complement basis

    SpanBuilder<RationalField> span(F, 105);
    auto v1 = eng.piece(4).nf_from_qpoly(F, s1);
    auto v2 = eng.piece(4).nf_from_qpoly(F, s2);
    span.insert(v1);
    span.insert(v2);
    REQUIRE(span.rank() == 2);

    auto sparse = random_section(eng, 4, Rng(3), 0.3);
    REQUIRE(sparse.term_count() < 70);
    REQUIRE_FALSE(sparse.is_zero());
}

TEST_CASE("hypersurface gates: degree must exceed l") {
    GrassCtx ctx = build_ctx(2, 3);
    RingEngine<RationalField> eng(ctx, RationalField{});
    REQUIRE_THROWS_AS(random_hypersurface(eng, 3, 1), HypothesisError);
}

TEST_CASE("experiment with zero trials returns an empty report") {
    GrassCtx ctx = build_ctx(2, 3);
    RingEngine<RationalField> engq(ctx, RationalField{});
    Hypersurface h = random_hypersurface(engq, 4, 5150);
    auto [pa, pb] = test_primes(137);
    CertifiedJacobi cj(ctx, h, pa, pb);
    auto basis = oneforms_basis(engq);
    WedgeCalculator calc(engq, default_chart(ctx));
    ExperimentEnv env;
    env.ring_q = &engq;
    env.oneforms = &basis;
    env.calc = &calc;
    env.theta0_q = theta_sections(engq, 0);
    auto rep = main_theorem_experiment(cj, h, env, 0, Rng(1));
    REQUIRE(rep.trials == 0);
    REQUIRE(rep.rows.empty());
    REQUIRE(rep.all_agree);
}
