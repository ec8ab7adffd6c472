#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "milnor/comodule.hpp"
#include "milnor/quotient.hpp"
#include "milnor/sseq.hpp"

namespace milnor {

struct CriterionResult {
    int id = 0;
    std::string label;
    bool pass = false;
    std::string detail;
};

namespace checks {

inline Poly xi(const TablePtr& t, int i) { return Poly::variable(t, i - 1); }

inline CriterionResult conjugation_identity() {
    CriterionResult r{1, "conjugation identity, n = 1..10", true, ""};
    for (int n = 1; n <= 10; ++n)
        if (!verify_milnor_identity(n, n)) {
            r.pass = false;
            r.detail = "fails at n = " + std::to_string(n);
        }
    return r;
}

inline CriterionResult q1_laws() {
    CriterionResult r{2, "Q1 on generators and conjugates, j = 1..6", true, ""};
    for (int j = 1; j <= 6 && r.pass; ++j) {
        auto t = xi_table(j + 1);
        bool gen = q1(xi(t, j)) == xi(t, j + 1) + xi(t, 1) * xi(t, j).pow(2);
        bool conj =
            q1(zeta(j, TruncationSpec::full(j + 1))) == zeta(j + 1, TruncationSpec::full(j + 1));
        if (!gen || !conj) {
            r.pass = false;
            r.detail = "fails at j = " + std::to_string(j);
        }
    }
    return r;
}

inline CriterionResult quotient_numerology() {
    CriterionResult r{3, "quotient numerology for five (k,m) pairs", true, ""};
    struct Case {
        int k, m;
    } cases[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};
    std::ostringstream detail;
    for (auto [k, m] : cases) {
        QuotientRing q = QuotientRing::build(k, m);
        long long expected_dim = (long long)gaussian_binomial_q2(m + k, k);
        long long delta = 2 * ((1LL << m) - 1) * ((1LL << k) - 1);
        bool ok = q.total_dim() == expected_dim && q.top_degree == delta &&
                  poincare_series(q) == closed_form_poincare(k, m) &&
                  poincare_series(q).palindromic() && frobenius_check(q).all_nonsingular;
        if (!ok) {
            r.pass = false;
            detail << "(" << k << "," << m << ") fails ";
        }
        if (k == 2 && m == 2 && q.total_dim() != 35) r.pass = false;
        if (k == 3 && m == 3 && q.total_dim() != 1395) r.pass = false;
    }
    r.detail = detail.str();
    return r;
}

inline CriterionResult regularity() {
    CriterionResult r{4, "regularity certificates and leading-term control", true, ""};
    struct Case {
        int k, m;
    } cases[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};
    for (auto [k, m] : cases)
        if (!regularity_check(k, m)) {
            r.pass = false;
            r.detail += "(" + std::to_string(k) + "," + std::to_string(m) + ") not certified ";
        }
    auto t2 = xi_table(2);
    std::vector<Poly> control = {xi(t2, 1) * xi(t2, 2).pow(2), xi(t2, 2).pow(5)};
    if (regularity_check_generators(t2, control, 2, 2)) {
        r.pass = false;
        r.detail += "leading-term control unexpectedly certified";
    }
    return r;
}

inline CriterionResult unexpected_relation() {
    CriterionResult r{5, "xi1^16 lies in the width-2 conjugate ideal, xi1^15 does not", true, ""};
    auto t2 = xi_table(2);
    std::vector<Poly> gens = {zeta(3, TruncationSpec::trunc(2)), zeta(4, TruncationSpec::trunc(2))};
    auto gb = buchberger(t2, gens);
    if (!normal_form(xi(t2, 1).pow(16), gb).is_zero()) r.pass = false;
    if (normal_form(xi(t2, 1).pow(15), gb).is_zero()) r.pass = false;
    auto res = reduce_with_cofactors(xi(t2, 1).pow(16), gens);
    if (!std::holds_alternative<CofactorCertificate>(res))
        r.pass = false;
    else
        std::get<CofactorCertificate>(res).verify();  // throws on failure
    return r;
}

inline CriterionResult full_width2_run() {
    CriterionResult r{6, "full width-2 run reaches the quotient dimensions", true, ""};
    AdamsRun run = run_adams(2, 2, 0, /*stem_bound=*/42);
    const Page& last = run.final_page();
    QuotientRing q = QuotientRing::build(2, 2);
    auto deficits = reconcile_with_abutment(last, q.dims());
    if (!reconcile_all_zero(deficits)) {
        r.pass = false;
        r.detail = "nonzero reconciliation deficit";
    }
    // interior dimensions equal those of the monomial quotient
    auto t2 = xi_table(2);
    QuotientRing mono = QuotientRing::from_generators(
        t2, {xi(t2, 1) * xi(t2, 2).pow(2), xi(t2, 2).pow(5), xi(t2, 1).pow(16)});
    auto page_dims = last.dims_by_stem();
    for (long long d = 0; d <= std::min<long long>(26, last.interior_max_stem()); ++d) {
        long long pd = page_dims.count(d) ? page_dims.at(d) : 0;
        if (pd != mono.dim_at(d)) {
            r.pass = false;
            r.detail = "mismatch with the monomial quotient at stem " + std::to_string(d);
        }
    }
    if (last.interior_max_stem() < 26) {
        r.pass = false;
        r.detail = "trusted interior does not reach stem 26";
    }
    return r;
}

inline CriterionResult schedules() {
    CriterionResult r{7, "differential schedules match the leading terms", true, ""};
    auto fmt = [](const DifferentialAssignment& a) { return a.r; };
    auto s22 = differential_schedule(2, 2);
    auto s33 = differential_schedule(3, 3);
    auto t22 = e2_table(2, 2);
    auto t33 = e2_table(3, 3);
    bool ok22 = s22.size() == 2 && fmt(s22[0]) == 3 && fmt(s22[1]) == 5 &&
                s22[0].target == xi(t22, 1) * xi(t22, 2).pow(2) &&
                s22[1].target == xi(t22, 2).pow(5);
    bool ok33 = s33.size() == 3 && fmt(s33[0]) == 3 && fmt(s33[1]) == 5 && fmt(s33[2]) == 9 &&
                s33[0].target == xi(t33, 1) * xi(t33, 3).pow(2) &&
                s33[1].target == xi(t33, 2) * xi(t33, 3).pow(4) &&
                s33[2].target == xi(t33, 3).pow(9);
    if (!ok22 || !ok33) {
        r.pass = false;
        r.detail = "fixed schedules disagree";
    }
    for (int k = 1; k <= 3; ++k)
        for (int m = k; m <= 5; ++m) {
            auto sched = differential_schedule(k, m);
            for (int i = 1; i <= k; ++i) {
                Poly lead = adams_leading_part(zeta(m + i, TruncationSpec::trunc(k)));
                Poly target = rebase(sched[size_t(i - 1)].target, xi_table(k));
                if (!(lead == target) ||
                    sched[size_t(i - 1)].r != int(weight_of(*xi_table(k), lead.terms()[0]))) {
                    r.pass = false;
                    r.detail = "schedule (" + std::to_string(k) + "," + std::to_string(m) +
                               ") step " + std::to_string(i);
                }
            }
        }
    return r;
}

inline CriterionResult cobar_dimensions() {
    CriterionResult r{8, "cobar Ext over the polynomial and truncated coalgebras", true, ""};
    auto ext = cobar_ext(trivial_comodule(), Coalgebra::poly_u(), 31);
    for (long long t = 0; t <= 31; ++t) {
        bool expected = t == 2 || t == 4 || t == 8 || t == 16;
        long long dim = ext.count({1, t}) ? ext.at({1, t}) : 0;
        if (dim != (expected ? 1 : 0)) {
            r.pass = false;
            r.detail = "Ext^1 wrong at t = " + std::to_string(t);
        }
    }
    // bigraded dims through t <= 20 match the polynomial algebra on classes
    // x_k in (s,t) = (1, 2^k)
    std::map<std::pair<long long, long long>, long long> poly_dims;
    std::function<void(int, long long, long long)> gen = [&](int k, long long s, long long t) {
        if (t > 20) return;
        poly_dims[{s, t}] += 1;
        for (int j = k; j <= 4; ++j) gen(j, s + 1, t + (1LL << j));
    };
    gen(1, 0, 0);
    for (const auto& [st, d] : poly_dims) {
        long long dim = ext.count(st) ? ext.at(st) : 0;
        if (st.second <= 20 && dim != d) {
            r.pass = false;
            r.detail = "bigraded mismatch at s=" + std::to_string(st.first) +
                       " t=" + std::to_string(st.second);
        }
    }
    for (const auto& [st, d] : ext)
        if (st.second <= 20 && d != (poly_dims.count(st) ? poly_dims.at(st) : 0)) r.pass = false;

    // truncated coalgebra: dims of F2[xi1, xi2] through t <= 16
    auto ext4 = cobar_ext(trivial_comodule(), Coalgebra::trunc_u(2), 16);
    for (long long s = 0; s <= 8; ++s)
        for (long long t = 0; t <= 16; ++t) {
            // monomials x1^a x2^b with a+b = s, 2a+4b = t
            long long expect = 0;
            long long b2 = (t - 2 * s);
            if (b2 >= 0 && b2 % 2 == 0 && b2 / 2 <= s) expect = 1;
            long long dim = ext4.count({s, t}) ? ext4.at({s, t}) : 0;
            if (dim != expect) {
                r.pass = false;
                r.detail = "truncated mismatch at s=" + std::to_string(s) + " t=" + std::to_string(t);
            }
        }
    return r;
}

inline CriterionResult splitting_degrees() {
    CriterionResult r{9, "split top degrees and page factorization", true, ""};
    struct Case {
        int k, m, n;
    } cases[] = {{1, 1, 1}, {2, 2, 1}, {2, 3, 2}};
    for (auto [k, m, n] : cases) {
        auto dims = split_dims(k, m, n);
        if (dims.rbegin()->first != delta_degree(k, m, n)) {
            r.pass = false;
            r.detail = "split top degree wrong";
        }
    }
    if (!page_factorization_check(2, 2, 1, 40) || !page_factorization_check(1, 1, 1, 20)) {
        r.pass = false;
        r.detail += " factorization fails";
    }
    return r;
}

inline CriterionResult end_module_duality(int k, int id, long long shift, long long lo,
                                          long long hi, long long stem_bound) {
    CriterionResult r{id,
                      "endomorphism-module run self-dual with shift " + std::to_string(shift), true,
                      ""};
    AdamsRun run = end_module_run(k, stem_bound);
    const Page& last = run.final_page();
    long long top = last.interior_max_stem();
    if (top < hi) {
        r.pass = false;
        r.detail = "trusted interior too small";
        return r;
    }
    auto dims = last.dims_by_stem();
    auto at = [&](long long d) { return dims.count(d) ? dims.at(d) : 0; };
    std::ostringstream deficits;
    for (long long d = std::min(lo, shift - top); d <= top; ++d)
        if (at(d) != at(shift - d)) {
            r.pass = false;
            deficits << " d=" << d << ":" << (at(d) - at(shift - d));
        }
    if (!r.pass) r.detail = "palindrome deficits:" + deficits.str();
    return r;
}

inline CriterionResult conjecture_report() {
    CriterionResult r{12, "reported power patterns in the finite quotients", true, ""};
    std::ostringstream detail;
    for (int k = 2; k <= 3; ++k) {
        QuotientRing q = QuotientRing::build(k, k);
        for (int j = 1; j < k; ++j) {
            long long p = 1LL << (2 * k - j + 1);
            Monomial mono = unit_monomial(*q.table());
            mono.exps[size_t(j - 1)] = Exp(p);
            bool vanish = q.reduce(mono).is_zero();
            mono.exps[size_t(j - 1)] = Exp(p - 1);
            bool prev_nonzero = !q.reduce(mono).is_zero();
            detail << "k=" << k << " xi" << j << "^" << p << (vanish ? " = 0" : " != 0") << ", xi"
                   << j << "^" << (p - 1) << (prev_nonzero ? " != 0" : " = 0") << "; ";
            if (k == 2 && !(vanish && prev_nonzero)) r.pass = false;
        }
        long long e = (1LL << (k + 1)) - 2;
        Monomial mono = unit_monomial(*q.table());
        mono.exps[size_t(k - 1)] = Exp(e);
        Poly top = q.reduce(mono);
        bool spans = !top.is_zero() && top.homogeneous_degree() == q.top_degree;
        detail << "k=" << k << " xi" << k << "^" << e << (spans ? " spans" : " misses")
               << " the top degree; ";
        if (k == 2 && !spans) r.pass = false;
    }
    r.detail = detail.str();
    return r;
}

}  // namespace checks

/// Acceptance criteria, grouped by suite. "core" covers the algebraic layer,
/// "sseq" the spectral-sequence layer.
inline std::vector<CriterionResult> run_suite(const std::string& suite) {
    std::vector<CriterionResult> out;
    bool core = suite == "core" || suite == "all";
    bool sseq = suite == "sseq" || suite == "all";
    if (!core && !sseq) throw error("unknown suite: " + suite);
    if (core) {
        out.push_back(checks::conjugation_identity());
        out.push_back(checks::q1_laws());
        out.push_back(checks::quotient_numerology());
        out.push_back(checks::regularity());
        out.push_back(checks::unexpected_relation());
    }
    if (sseq) {
        out.push_back(checks::full_width2_run());
        out.push_back(checks::schedules());
        out.push_back(checks::cobar_dimensions());
        out.push_back(checks::splitting_degrees());
        out.push_back(checks::end_module_duality(2, 10, 18, -2, 20, 40));
        out.push_back(checks::end_module_duality(3, 11, 98, -6, 104, 114));
    }
    if (core) out.push_back(checks::conjecture_report());
    std::sort(out.begin(), out.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    return out;
}

inline int print_suite(const std::vector<CriterionResult>& results, std::ostream& os) {
    int failures = 0;
    for (const auto& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  C" << r.id << "  " << r.label;
        if (!r.detail.empty()) os << "  [" << r.detail << "]";
        os << "\n";
        if (!r.pass) ++failures;
    }
    os << (failures ? "FAILED" : "OK") << " (" << results.size() - size_t(failures) << "/"
       << results.size() << " criteria)\n";
    return failures ? 1 : 0;
}

}  // namespace milnor
