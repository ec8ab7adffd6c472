#include <catch2/catch_amalgamated.hpp>

#include "milnor/chart.hpp"
#include "milnor/sseq.hpp"

using namespace milnor;

namespace {

Poly xi(const TablePtr& t, int i) { return Poly::variable(t, i - 1); }

// dims by bidegree of F2[xi1,xi2]-monomials avoiding the given monomial
// ideal, tensored with chosen powers of an e-class of the given degree
std::map<BiDegree, long long> monomial_page_oracle(
    const std::vector<std::pair<int, int>>& ideal, const std::vector<int>& epowers, long long edeg,
    long long stem_cap) {
    std::map<BiDegree, long long> out;
    for (int a = 0; a <= stem_cap; ++a)
        for (int b = 0; 3 * b <= stem_cap; ++b) {
            bool standard = true;
            for (auto [ia, ib] : ideal)
                if (a >= ia && b >= ib) standard = false;
            if (!standard) continue;
            for (int c : epowers) {
                long long stem = a + 3LL * b + edeg * c;
                if (stem <= stem_cap) out[{stem, a + b}] += 1;
            }
        }
    return out;
}

bool dims_match(const Page& page, const std::map<BiDegree, long long>& expect) {
    auto actual = page.dims();
    long long hi = page.interior_max_stem();
    for (const auto& [bd, d] : expect)
        if (bd.stem <= hi && (actual.count(bd) ? actual.at(bd) : 0) != d) return false;
    for (const auto& [bd, d] : actual)
        if (bd.stem <= hi && (expect.count(bd) ? expect.at(bd) : 0) != d) return false;
    return true;
}

}  // namespace

TEST_CASE("starting pages") {
    Page e2 = e2_page(2, 2, 0, 30);
    // free module over F2[xi1,xi2] on e8^0..e8^3
    CHECK(dims_match(e2, monomial_page_oracle({}, {0, 1, 2, 3}, 8, 30)));
    CHECK(e2.r == 2);
    CHECK(e2.interior_max_stem() == 28);

    Page e2n = e2_page(2, 2, 1, 30);  // e-cap rises to e8^8
    CHECK(dims_match(e2n, monomial_page_oracle({}, {0, 1, 2, 3, 4, 5, 6, 7}, 8, 30)));

    Page e11 = e2_page(1, 1, 0, 12);
    auto dims = e11.dims();
    CHECK(dims.at({0, 0}) == 1);
    CHECK(dims.at({1, 1}) == 1);  // xi1
    CHECK(dims.at({4, 0}) == 1);  // e4
    CHECK(dims.count({8, 0}) == 0);  // e4^2 = 0

    CHECK_THROWS_AS(e2_page(2, 1, 0), error);  // needs m >= k
}

TEST_CASE("differential schedules") {
    auto s22 = differential_schedule(2, 2);
    REQUIRE(s22.size() == 2);
    CHECK(s22[0].r == 3);
    CHECK(s22[1].r == 5);
    auto t22 = e2_table(2, 2);
    CHECK(s22[0].source == Poly::variable(t22, "e8"));
    CHECK(s22[0].target == xi(t22, 1) * xi(t22, 2).pow(2));
    CHECK(s22[1].source == Poly::variable(t22, "e8").pow(2));
    CHECK(s22[1].target == xi(t22, 2).pow(5));

    auto s33 = differential_schedule(3, 3);
    REQUIRE(s33.size() == 3);
    CHECK((s33[0].r == 3 && s33[1].r == 5 && s33[2].r == 9));
    auto t33 = e2_table(3, 3);
    CHECK(s33[0].target == xi(t33, 1) * xi(t33, 3).pow(2));
    CHECK(s33[1].target == xi(t33, 2) * xi(t33, 3).pow(4));
    CHECK(s33[2].target == xi(t33, 3).pow(9));

    auto s23 = differential_schedule(2, 3);
    REQUIRE(s23.size() == 2);
    CHECK(s23[0].r == 5);
    CHECK(s23[1].r == 11);
    auto t23 = e2_table(2, 3);
    CHECK(s23[0].target == xi(t23, 2).pow(5));
    CHECK(s23[1].target == xi(t23, 1) * xi(t23, 2).pow(10));

    CHECK_THROWS_AS(differential_schedule(1, 0), error);  // m = 0 rejected
    CHECK_THROWS_AS(differential_schedule(2, 1), error);
}

TEST_CASE("width-1 run collapses after one differential") {
    AdamsRun run = run_adams(1, 1, 0, 20);
    REQUIRE(run.pages.size() == 2);
    const Page& e4 = run.final_page();
    CHECK(e4.r == 4);
    QuotientRing q = QuotientRing::build(1, 1);
    CHECK(reconcile_all_zero(reconcile_with_abutment(e4, q.dims())));
    // the stem-bound cell survives untrusted: its killer lives past the bound
    CHECK(e4.dims_by_stem().count(20) == 1);
    CHECK(e4.interior_max_stem() == 16);
}

TEST_CASE("width-2 run page by page") {
    AdamsRun run = run_adams(2, 2, 0, 42);
    REQUIRE(run.pages.size() == 4);  // E2, E4, E6, E16

    // after d3: F2[xi1,xi2]/(xi1 xi2^2) (x) E(e8^2)
    CHECK(dims_match(run.pages[1], monomial_page_oracle({{1, 2}}, {0, 2}, 8, 42)));

    // after d5: F2/(xi1 xi2^2, xi2^5) on e^0 plus xi1*F2[xi1,xi2]/(xi2^2) on e^2
    auto e6_expect = monomial_page_oracle({{1, 2}, {0, 5}}, {0}, 8, 42);
    for (int i = 0; i <= 42; ++i)
        for (int j = 0; j <= 1; ++j) {
            long long stem = (1 + i) + 3LL * j + 16;
            if (stem <= 42) e6_expect[{stem, 1 + i + j}] += 1;
        }
    CHECK(dims_match(run.pages[2], e6_expect));

    // after d15: F2[xi1,xi2]/(xi1 xi2^2, xi2^5, xi1^16)
    CHECK(dims_match(run.pages[3], monomial_page_oracle({{1, 2}, {0, 5}, {16, 0}}, {0}, 8, 42)));

    QuotientRing q = QuotientRing::build(2, 2);
    auto deficits6 = reconcile_with_abutment(run.pages[2], q.dims());
    CHECK(deficits6.at(16) == 1);  // the class the d15 family must remove
    CHECK(deficits6.at(17) == 2);
    CHECK(!reconcile_all_zero(deficits6));
    CHECK(reconcile_all_zero(reconcile_with_abutment(run.pages[3], q.dims())));

    // interior bookkeeping per total degree across each turn of the crank
    for (size_t p = 0; p + 1 < run.pages.size(); ++p) {
        const Page& before = run.pages[p];
        const Page& after = run.pages[p + 1];
        int r = after.r - 1;
        std::map<long long, long long> rank_out, rank_in;
        for (const auto& a : after.arrows)
            if (a.r == r) {
                rank_out[a.src.stem] += a.rank;
                rank_in[a.tgt.stem] += a.rank;
            }
        auto db = before.dims_by_stem();
        auto da = after.dims_by_stem();
        for (long long d = 0; d <= after.interior_max_stem(); ++d) {
            long long lhs = da.count(d) ? da.at(d) : 0;
            long long rhs = (db.count(d) ? db.at(d) : 0) - (rank_out.count(d) ? rank_out.at(d) : 0) -
                            (rank_in.count(d) ? rank_in.at(d) : 0);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("bad assignments are rejected") {
    Page e2 = e2_page(2, 2, 0, 30);
    auto t = e2.alg->table;
    Poly e8 = Poly::variable(t, "e8");

    // wrong target bidegree
    DifferentialAssignment bad{3, e8, xi(t, 1).pow(3)};
    CHECK_THROWS_AS(run_differential(e2, {bad}), error);

    // ill-defined Leibniz extension: e8 maps out but xi1*e8 is declared a cycle
    DifferentialAssignment good{3, e8, xi(t, 1) * xi(t, 2).pow(2)};
    DifferentialAssignment clash{3, xi(t, 1) * e8, Poly::zero(t)};
    CHECK_THROWS_AS(run_differential(e2, {good, clash}), error);

    // d o d nonzero: the target of the first feeds the second
    DifferentialAssignment chain{3, xi(t, 1) * xi(t, 2).pow(2), xi(t, 1).pow(6)};
    CHECK_THROWS_AS(run_differential(e2, {good, chain}), error);

    // source died on an earlier page
    Page e4 = run_differential(e2, {good});
    DifferentialAssignment dead{5, e8, xi(t, 1).pow(4) * xi(t, 2)};
    CHECK_THROWS_AS(run_differential(e4, {dead}), error);

    // page index monotonicity
    CHECK_THROWS_AS(run_differential(e4, {good}), error);
}

TEST_CASE("page factorization against the split runs") {
    CHECK(page_factorization_check(1, 1, 0, 20));  // vacuous
    CHECK(page_factorization_check(1, 1, 1, 20));
    CHECK(page_factorization_check(2, 2, 1, 40));
}

TEST_CASE("endomorphism-module run, width 2") {
    AdamsRun run = end_module_run(2, 40);
    const Page& last = run.final_page();
    CHECK(last.r == 16);
    CHECK(palindromic_dims(last, 18, -2, 20));

    std::map<long long, long long> expect = {{-2, 1}, {0, 1},  {1, 1},  {3, 1},  {4, 1},
                                             {6, 2},  {9, 2},  {12, 2}, {14, 1}, {15, 1},
                                             {17, 1}, {18, 1}, {20, 1}};
    auto dims = last.dims_by_stem();
    for (long long d = -2; d <= last.interior_max_stem(); ++d) {
        long long got = dims.count(d) ? dims.at(d) : 0;
        CHECK(got == (expect.count(d) ? expect.at(d) : 0));
    }

    // the d15 family base-changes to zero: the page is unchanged from E6
    CHECK(run.pages[2].total_dim() == run.pages[3].total_dim());
}

TEST_CASE("endomorphism-module run, width 3") {
    AdamsRun run = end_module_run(3, 114);
    const Page& last = run.final_page();
    CHECK(last.r == 10);
    CHECK(palindromic_dims(last, 98, -6, 104));
    auto dims = last.dims_by_stem();
    CHECK(dims.at(-6) == 1);
    CHECK(dims.at(98) == 1);
    CHECK(dims.at(104) == 1);
    CHECK(dims.at(0) == 1);
}

TEST_CASE("charts") {
    // a single class: one dot, no arrows
    Page tiny = e2_page(1, 1, 0, 2);
    PageView v0 = make_view(tiny);
    std::string svg0 = render_svg(v0);
    CHECK(svg0.find("<circle") != std::string::npos);
    CHECK(svg0.find("marker-end") == std::string::npos);

    AdamsRun run = run_adams(2, 2, 0, 20);
    PageView v = make_view(run, 0);
    std::string svg = render_svg(v);
    long long total = 0;
    for (const auto& [bd, d] : v.dims) total += std::min<long long>(d, 3) + 0;
    size_t dots = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) ++dots, ++pos;
    CHECK((long long)dots == total);

    long long rank_total = 0;
    for (const auto& a : v.arrows) rank_total += a.rank;
    size_t arrows = 0;
    pos = 0;
    while ((pos = svg.find("marker-end", pos)) != std::string::npos) ++arrows, ++pos;
    CHECK((long long)arrows == rank_total);
    CHECK(rank_total > 0);

    // deterministic output and JSON round-trip
    CHECK(render_svg(v) == svg);
    PageView back = page_from_json(page_to_json(v));
    CHECK(back.dims == v.dims);
    long long back_rank = 0;
    for (const auto& a : back.arrows) back_rank += a.rank;
    CHECK(back_rank == rank_total);
    CHECK(render_text(v).find("page r=2") == 0);
}
