#include <catch2/catch_amalgamated.hpp>

#include "grassjac/poly.hpp"
#include "grassjac/rng.hpp"

using namespace grassjac;

namespace {

VarTable xy() {
    VarTable v;
    v.names = {"p_{0}", "p_{1}"};
    return v;
}

QPoly random_poly(Rng& rng, std::size_t nvars, int deg, int terms) {
    QPoly f(nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m = Monomial::one(nvars);
        int rem = deg;
        for (std::size_t i = 0; i + 1 < nvars; ++i) {
            int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(rem + 1)));
            m.e[i] = static_cast<std::uint8_t>(e);
            rem -= e;
        }
        m.e[nvars - 1] = static_cast<std::uint8_t>(rem);
        f.add_term(m, random_small_rational(rng));
    }
    return f;
}

} // namespace

TEST_CASE("graded_basis sizes: degree zero, linear, quadratic") {
    REQUIRE(graded_basis(6, 0).size() == 1);
    REQUIRE(graded_basis(6, 0)[0] == Monomial::one(6));
    REQUIRE(graded_basis(6, 1).size() == 6);
    REQUIRE(graded_basis(6, 2).size() == 21); // C(7,2)
}

TEST_CASE("graded_basis cardinality matches the stars-and-bars count") {
    Rng rng(11);
    for (int t = 0; t < 12; ++t) {
        const std::size_t v = 1 + rng.below(6);
        const int d = static_cast<int>(rng.below(7));
        REQUIRE(graded_basis(v, d).size() == monomial_count(v, static_cast<std::size_t>(d)));
    }
}

TEST_CASE("monomial ranking is the inverse of enumeration") {
    MonomialBasis b(5, 4);
    for (std::size_t i = 0; i < b.size(); ++i) REQUIRE(b.rank(b.exps(i)) == i);
}

TEST_CASE("mul: unit element, binomial square, evaluation homomorphism") {
    Rng rng(3);
    QPoly f = random_poly(rng, 3, 4, 5);
    QPoly onep = QPoly::constant(3, 1);
    REQUIRE(mul(f, onep) == f);

    // (x+y)^2 = x^2 + 2xy + y^2
    QPoly x = QPoly::variable(2, 0), y = QPoly::variable(2, 1);
    QPoly sq = mul(x + y, x + y);
    QPoly expect(2);
    expect.add_term(Monomial{{2, 0}}, 1);
    expect.add_term(Monomial{{1, 1}}, 2);
    expect.add_term(Monomial{{0, 2}}, 1);
    REQUIRE(sq == expect);

    for (int t = 0; t < 20; ++t) {
        QPoly g = random_poly(rng, 3, 3, 4);
        std::vector<Rational> pt = {random_small_rational(rng), random_small_rational(rng),
                                    random_small_rational(rng)};
        REQUIRE(evaluate(mul(f, g), pt) == evaluate(f, pt) * evaluate(g, pt));
    }
}

TEST_CASE("evaluate: constants and x^2 y at (2,3)") {
    QPoly c = QPoly::constant(2, 1);
    REQUIRE(evaluate(c, {Rational(7), Rational(-2)}) == Rational(1));
    QPoly f(2);
    f.add_term(Monomial{{2, 1}}, 1);
    REQUIRE(evaluate(f, {Rational(2), Rational(3)}) == Rational(12));
    REQUIRE_THROWS(evaluate(f, {Rational(1)}));
}

TEST_CASE("Euler derivation scales a homogeneous polynomial by its degree") {
    Rng rng(17);
    auto e = Derivation::euler(4);
    for (int d = 1; d <= 5; ++d) {
        QPoly f = random_poly(rng, 4, d, 6);
        REQUIRE(apply_derivation(e, f) == f.scaled(Rational(d)));
    }
}

TEST_CASE("apply_derivation satisfies the Leibniz rule on seeded random triples") {
    Rng rng(23);
    for (int t = 0; t < 100; ++t) {
        std::vector<QPoly> images;
        const int e = static_cast<int>(rng.below(3));
        for (int i = 0; i < 3; ++i) images.push_back(random_poly(rng, 3, e + 1, 3));
        auto D = Derivation::from_images(images);
        QPoly f = random_poly(rng, 3, 2 + static_cast<int>(rng.below(3)), 4);
        QPoly g = random_poly(rng, 3, 1 + static_cast<int>(rng.below(3)), 4);
        QPoly lhs = apply_derivation(D, mul(f, g));
        QPoly rhs = mul(apply_derivation(D, f), g) + mul(f, apply_derivation(D, g));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("derivation twist bookkeeping and homogeneity guard") {
    auto D = Derivation::from_images({QPoly::variable(2, 0), QPoly::variable(2, 1)});
    REQUIRE(D.twist == 0);
    QPoly bad(2);
    bad.add_term(Monomial{{1, 0}}, 1);
    bad.add_term(Monomial{{2, 0}}, 1);
    REQUIRE_THROWS(Derivation::from_images({bad, QPoly(2)}));
}

TEST_CASE("polynomial text format round-trips exactly") {
    auto vars = xy();
    Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        QPoly f = random_poly(rng, 2, static_cast<int>(rng.below(6)), 4);
        REQUIRE(parse_poly(poly_to_string(f, vars), vars) == f);
    }
    REQUIRE(parse_poly("0", vars).is_zero());
    REQUIRE(poly_to_string(QPoly(2), vars) == "0");

    VarTable pv;
    pv.names = {"p_{0,1}", "p_{0,2}", "p_{1,2}"};
    QPoly f = parse_poly("3*p_{0,1}^2*p_{1,2} + -1/2*p_{0,2}^3", pv);
    REQUIRE(f.term_count() == 2);
    REQUIRE(poly_to_string(f, pv) == "3*p_{0,1}^2*p_{1,2} + -1/2*p_{0,2}^3");
}
