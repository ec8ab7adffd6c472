#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "milnor/poly_io.hpp"
#include "milnor/zeta.hpp"

using namespace milnor;

namespace {
Poly xi(const TablePtr& t, int i) { return Poly::variable(t, i - 1); }
}

TEST_CASE("conjugate classes in the full ring") {
    auto full = [](int n) { return TruncationSpec::full(n); };
    auto t1 = xi_table(1);
    CHECK(zeta(1, full(1)) == xi(t1, 1));

    auto t2 = xi_table(2);
    CHECK(zeta(2, full(2)) == xi(t2, 2) + xi(t2, 1).pow(3));

    auto t3 = xi_table(3);
    CHECK(zeta(3, full(3)) == xi(t3, 3) + xi(t3, 1) * xi(t3, 2).pow(2) +
                                  xi(t3, 1).pow(4) * xi(t3, 2) + xi(t3, 1).pow(7));

    CHECK(zeta(0, full(1)).is_one());
    for (int n = 1; n <= 9; ++n) {
        Poly z = zeta(n, full(n));
        auto d = z.homogeneous_degree();
        REQUIRE(d.has_value());
        CHECK(*d == (1LL << n) - 1);
    }
    CHECK_THROWS_AS(zeta(3, full(2)), error);
}

TEST_CASE("conjugate classes in truncated rings") {
    auto t2 = xi_table(2);
    Poly z4 = zeta(4, TruncationSpec::trunc(2));
    CHECK(z4 == xi(t2, 2).pow(5) + xi(t2, 1).pow(3) * xi(t2, 2).pow(4) +
                    xi(t2, 1).pow(9) * xi(t2, 2).pow(2) + xi(t2, 1).pow(12) * xi(t2, 2) +
                    xi(t2, 1).pow(15));
    CHECK(zeta(2, TruncationSpec::trunc(1)) == xi(xi_table(1), 1).pow(3));

    // truncation commutes with the full computation
    for (int k = 1; k <= 3; ++k)
        for (int n = 1; n <= 8; ++n)
            CHECK(zeta(n, TruncationSpec::trunc(k)) == truncate_to(zeta(n, TruncationSpec::full(n)), k));
}

TEST_CASE("conjugation recursion agrees with power-series inversion") {
    for (int n = 1; n <= 10; ++n) CHECK(verify_milnor_identity(n, n));
    CHECK(verify_milnor_identity(5, 8));
}

TEST_CASE("the memo table serves concurrent callers") {
    std::vector<Poly> results(8);
    std::vector<std::thread> workers;
    for (int w = 0; w < 8; ++w)
        workers.emplace_back([&results, w] {
            results[size_t(w)] = zeta(7, w % 2 ? TruncationSpec::trunc(3) : TruncationSpec::full(7));
        });
    for (auto& th : workers) th.join();
    for (int w = 2; w < 8; ++w) CHECK(results[size_t(w)] == results[size_t(w - 2)]);
    CHECK(results[1] == truncate_to(results[0], 3));
}

TEST_CASE("q1 on generators and conjugates") {
    for (int j = 1; j <= 6; ++j) {
        auto t = xi_table(j + 1);
        CHECK(q1(xi(t, j)) == xi(t, j + 1) + xi(t, 1) * xi(t, j).pow(2));
        CHECK(q1(zeta(j, TruncationSpec::full(j + 1))) == zeta(j + 1, TruncationSpec::full(j + 1)));
    }
    auto t = xi_table(2);
    CHECK(q1(xi(t, 1).pow(2)).is_zero());
    CHECK(q1(xi(t, 1)) == xi(t, 2) + xi(t, 1).pow(3));

    // output degree doubles plus one
    for (int j = 1; j <= 4; ++j) {
        auto tj = xi_table(j + 1);
        Poly z = zeta(j, TruncationSpec::full(j + 1));
        auto d = q1(z).homogeneous_degree();
        REQUIRE(d.has_value());
        CHECK(*d == 2 * ((1LL << j) - 1) + 1);
    }
}

TEST_CASE("q1 rejects bad input") {
    auto t = xi_table(2);
    CHECK_THROWS_AS(q1(xi(t, 1) + xi(t, 2)), error);          // inhomogeneous
    CHECK_THROWS_AS(q1(xi(t, 2)), error);                     // xi3 missing
    auto u = make_table({{"u", 2, Parity::polynomial, 0}});
    CHECK_THROWS_AS(q1(Poly::variable(u, 0)), error);         // not a xi table
}

TEST_CASE("closed-form leading term of truncated conjugates") {
    auto lead = [](int n, int k) {
        return Poly::monomial(xi_table(k), zeta_leading_term(n, k));
    };
    auto t2 = xi_table(2);
    auto t3 = xi_table(3);
    CHECK(lead(3, 2) == xi(t2, 1) * xi(t2, 2).pow(2));
    CHECK(lead(4, 2) == xi(t2, 2).pow(5));
    CHECK(lead(4, 3) == xi(t3, 1) * xi(t3, 3).pow(2));
    CHECK(lead(5, 2) == xi(t2, 1) * xi(t2, 2).pow(10));

    for (int k = 1; k <= 4; ++k)
        for (int n = k + 1; n <= 2 * k + 2; ++n) {
            Poly lp = adams_leading_part(zeta(n, TruncationSpec::trunc(k)));
            REQUIRE(lp.term_count() == 1);
            CHECK(lp.terms()[0] == zeta_leading_term(n, k));
        }
    CHECK_THROWS_AS(zeta_leading_term(2, 2), error);
}
