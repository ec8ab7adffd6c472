#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "milnor/poly.hpp"
#include "milnor/poly_io.hpp"

using namespace milnor;

namespace {

Poly xi(const TablePtr& t, int i) { return Poly::variable(t, i - 1); }

// random polynomial with bounded exponents, for the ring-axiom properties
Poly random_poly(const TablePtr& t, std::mt19937& rng, int max_terms = 6, int max_exp = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(0, max_exp);
    std::vector<Monomial> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m = unit_monomial(*t);
        for (size_t v = 0; v < t->size(); ++v) m.exps[v] = Exp(exp(rng));
        terms.push_back(m);
    }
    return Poly::from_terms(t, std::move(terms));
}

}  // namespace

TEST_CASE("addition is symmetric difference over F2") {
    auto t = xi_table(2);
    Poly a = xi(t, 1) + xi(t, 2);
    CHECK((a + a).is_zero());
    CHECK(xi(t, 1) + Poly::zero(t) == xi(t, 1));
    Poly b = xi(t, 2) + xi(t, 1).pow(3);
    CHECK(b + xi(t, 2) == xi(t, 1).pow(3));
}

TEST_CASE("multiplication squares in characteristic 2") {
    auto t = xi_table(2);
    Poly b = xi(t, 2) + xi(t, 1).pow(3);
    CHECK(b * b == xi(t, 2).pow(2) + xi(t, 1).pow(6));
    CHECK(b.pow(4) == xi(t, 2).pow(4) + xi(t, 1).pow(12));

    Poly m = xi(t, 1) * xi(t, 2).pow(2);
    REQUIRE(m.term_count() == 1);
    CHECK(degree_of(*t, m.terms()[0]) == 7);
}

TEST_CASE("exterior generators square to zero") {
    auto t = make_table({{"b", -2, Parity::exterior, 0}, {"x", 2, Parity::polynomial, 0}});
    Poly beta = Poly::variable(t, "b");
    CHECK((beta * beta).is_zero());
    Poly x = Poly::variable(t, "x");
    CHECK((beta + x) * (beta + x) == x * x);
    CHECK(beta.pow(0).is_one());
}

TEST_CASE("ring axioms on random triples") {
    auto t = xi_table(3);
    std::mt19937 rng(20240811);
    for (int it = 0; it < 60; ++it) {
        Poly p = random_poly(t, rng), q = random_poly(t, rng), r = random_poly(t, rng);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p + p).is_zero());
        CHECK((p + q).square() == p.square() + q.square());
        CHECK(p.square() == p * p);
    }
}

TEST_CASE("degree and weight are additive on products") {
    auto t = xi_table(3);
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        Poly p = random_poly(t, rng), q = random_poly(t, rng);
        if (p.is_zero() || q.is_zero()) continue;
        Poly m1 = Poly::monomial(t, p.terms()[0]);
        Poly m2 = Poly::monomial(t, q.terms()[0]);
        Poly prod = m1 * m2;
        REQUIRE(prod.term_count() == 1);  // integral domain on monomials
        CHECK(degree_of(*t, prod.terms()[0]) ==
              degree_of(*t, m1.terms()[0]) + degree_of(*t, m2.terms()[0]));
        CHECK(weight_of(*t, prod.terms()[0]) ==
              weight_of(*t, m1.terms()[0]) + weight_of(*t, m2.terms()[0]));
    }
}

TEST_CASE("pow matches repeated multiplication") {
    auto t = xi_table(2);
    std::mt19937 rng(99);
    for (int it = 0; it < 20; ++it) {
        Poly p = random_poly(t, rng, 4, 3);
        Poly acc = Poly::one(t);
        for (int n = 0; n <= 5; ++n) {
            CHECK(p.pow(n) == acc);
            acc = acc * p;
        }
    }
    CHECK(xi(t, 1).pow(0).is_one());
}

TEST_CASE("table mismatch is rejected") {
    auto t2 = xi_table(2);
    auto e = make_table({{"u", 2, Parity::polynomial, 0}});
    CHECK_THROWS_AS(Poly::variable(t2, 0) + Poly::variable(e, 0), table_mismatch);
    CHECK_THROWS_AS(Poly::variable(t2, 0) * Poly::variable(e, 0), table_mismatch);
}

TEST_CASE("exponent overflow is a reported error") {
    auto t = xi_table(1);
    Poly big = Poly::monomial(t, Monomial{{std::numeric_limits<Exp>::max()}});
    CHECK_THROWS_AS(big * Poly::variable(t, 0), overflow_error);
    CHECK_THROWS_AS(big.square(), overflow_error);
}

TEST_CASE("binomial coefficients mod 2 via Lucas") {
    CHECK(binom_mod2(6, 2) == 1);  // 15 is odd
    CHECK(binom_mod2(4, 2) == 0);  // 6 is even
    for (int n = 0; n < 12; ++n) CHECK(binom_mod2(n, 0) == 1);
    // cross-check against the Pascal triangle mod 2
    int pascal[32][32] = {};
    for (int n = 0; n < 32; ++n) {
        pascal[n][0] = 1;
        for (int k = 1; k <= n; ++k) pascal[n][k] = (pascal[n - 1][k - 1] + pascal[n - 1][k]) & 1;
    }
    for (int n = 0; n < 32; ++n)
        for (int k = 0; k < 32; ++k) CHECK(binom_mod2(n, k) == pascal[n][k]);
}

TEST_CASE("adams leading part picks the minimal-weight terms") {
    auto t = xi_table(2);
    Poly p = xi(t, 1) * xi(t, 2).pow(2) + xi(t, 1).pow(4) * xi(t, 2) + xi(t, 1).pow(7);
    CHECK(adams_leading_part(p) == xi(t, 1) * xi(t, 2).pow(2));
    CHECK(adams_leading_part(xi(t, 2)) == xi(t, 2));
    Poly z4 = xi(t, 2).pow(5) + xi(t, 1).pow(3) * xi(t, 2).pow(4) + xi(t, 1).pow(9) * xi(t, 2).pow(2) +
              xi(t, 1).pow(12) * xi(t, 2) + xi(t, 1).pow(15);
    CHECK(adams_leading_part(z4) == xi(t, 2).pow(5));
    CHECK_THROWS_AS(adams_leading_part(Poly::zero(t)), error);
}

TEST_CASE("canonical order: graded by degree, then reverse lex") {
    auto t = xi_table(2);
    // all of degree 7; the pure xi1 power sorts first
    Poly p = xi(t, 1) * xi(t, 2).pow(2) + xi(t, 1).pow(4) * xi(t, 2) + xi(t, 1).pow(7);
    REQUIRE(p.term_count() == 3);
    CHECK(p.terms()[0] == Monomial{{7, 0}});
    CHECK(p.terms()[1] == Monomial{{4, 1}});
    CHECK(p.terms()[2] == Monomial{{1, 2}});
    // degree dominates
    CHECK(canon_cmp(*t, Monomial{{0, 3}}, Monomial{{7, 0}}) > 0);
}

TEST_CASE("polynomial JSON round-trips bit-exactly") {
    auto t = xi_table(3);
    std::mt19937 rng(5);
    for (int it = 0; it < 20; ++it) {
        Poly p = random_poly(t, rng);
        json j = poly_to_json(p);
        std::string s = j.dump();
        Poly q = poly_from_json(json::parse(s));
        CHECK(p == q);
        CHECK(poly_to_json(q).dump() == s);
    }
    Poly p = Poly::variable(t, 0) + Poly::variable(t, 1).pow(2);
    CHECK(poly_to_json(p).dump() ==
          R"({"terms":[[0,2,0],[1,0,0]],"vars":[["xi1",1,"poly",1],["xi2",3,"poly",1],["xi3",7,"poly",1]]})");
}

TEST_CASE("text rendering and parsing") {
    auto t = xi_table(2);
    Poly p = xi(t, 1).pow(3) * xi(t, 2) + Poly::one(t);
    CHECK(poly_to_string(p) == "xi1^3*xi2 + 1");
    CHECK(poly_from_string(t, poly_to_string(p)) == p);
    CHECK(poly_to_string(Poly::zero(t)) == "0");
}

TEST_CASE("rebase and truncation helpers") {
    auto t2 = xi_table(2);
    auto t3 = xi_table(3);
    Poly p = xi(t2, 1) + xi(t2, 2);
    Poly q = rebase(p, t3);
    CHECK(q == xi(t3, 1) + xi(t3, 2));
    Poly r = xi(t3, 3) + xi(t3, 1);
    CHECK(set_to_zero(r, {"xi3"}).term_count() == 1);
}
