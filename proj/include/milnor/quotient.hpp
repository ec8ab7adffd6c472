#pragma once

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "milnor/gf2.hpp"
#include "milnor/groebner.hpp"
#include "milnor/series.hpp"
#include "milnor/zeta.hpp"

namespace milnor {

/// Feasibility caps; environment variables MILNOR_DIM_LIMIT / MILNOR_DEGREE_LIMIT
/// mirror the corresponding CLI flags.
struct Limits {
    long long dim_limit = 100000;
    long long degree_limit = 1 << 14;
    long long gb_grade_cap = 0;  // 0: default to twice the expected top degree

    static Limits from_env() {
        Limits l;
        if (const char* s = std::getenv("MILNOR_DIM_LIMIT")) l.dim_limit = std::atoll(s);
        if (const char* s = std::getenv("MILNOR_DEGREE_LIMIT")) l.degree_limit = std::atoll(s);
        if (const char* s = std::getenv("MILNOR_GB_CAP")) l.gb_grade_cap = std::atoll(s);
        return l;
    }
};

/// Gaussian binomial coefficient evaluated at q = 2, in exact integer
/// arithmetic (the intermediate products stay divisible at every step).
inline unsigned long long gaussian_binomial_q2(int n, int k) {
    if (k < 0 || k > n) throw error("gaussian_binomial_q2: need 0 <= k <= n");
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        if (n - k + i >= 64) throw overflow_error("gaussian_binomial_q2 overflow");
        acc *= (static_cast<unsigned __int128>(1) << (n - k + i)) - 1;
        acc /= (static_cast<unsigned long long>(1) << i) - 1;
        if (acc > static_cast<unsigned __int128>(~0ULL)) throw overflow_error("gaussian_binomial_q2 overflow");
    }
    return static_cast<unsigned long long>(acc);
}

/// delta(k, m, n) = 2^(m+k+n+1) - 2^(m+1) - 2^(k+1) + 2; the top degree of
/// the split quotient module. For n = 0 this is 2(2^m - 1)(2^k - 1).
inline long long delta_degree(int k, int m, int n) {
    if (k < 1 || m < 1 || n < 0) throw error("delta_degree: need k, m >= 1 and n >= 0");
    if (m + k + n + 1 >= 62) throw overflow_error("delta_degree overflow");
    return (1LL << (m + k + n + 1)) - (1LL << (m + 1)) - (1LL << (k + 1)) + 2;
}

/// Closed-form Poincare polynomial prod (1-t^(2^(m+i)-1)) / prod (1-t^(2^i-1));
/// the division is exact because the generators form a regular sequence.
inline IntSeries closed_form_poincare(int k, int m) {
    if (k < 1 || m < 0) throw error("closed_form_poincare: need k >= 1, m >= 0");
    IntSeries num = IntSeries::one(), den = IntSeries::one();
    for (int i = 1; i <= k; ++i) {
        num = num * IntSeries::one_minus_tpow((1LL << (m + i)) - 1);
        den = den * IntSeries::one_minus_tpow((1LL << i) - 1);
    }
    return num.divide_exact(den);
}

/// A finite-dimensional quotient of F2[xi1..xik] presented by a Groebner
/// basis, with its degree-indexed standard-monomial basis.
class QuotientRing {
public:
    int k = 0, m = -1;  // m = -1 for generic quotients
    GroebnerBasis gb;
    std::map<long long, std::vector<Monomial>> basis_by_degree;
    long long top_degree = -1;
    bool finite = false;

    const TablePtr& table() const { return gb.table(); }

    long long dim_at(long long d) const {
        auto it = basis_by_degree.find(d);
        return it == basis_by_degree.end() ? 0 : (long long)it->second.size();
    }
    std::map<long long, long long> dims() const {
        std::map<long long, long long> out;
        for (const auto& [d, v] : basis_by_degree)
            if (!v.empty()) out[d] = (long long)v.size();
        return out;
    }
    long long total_dim() const {
        long long s = 0;
        for (const auto& [d, v] : basis_by_degree) s += (long long)v.size();
        return s;
    }

    /// Normal form of a monomial, cached; safe for concurrent readers.
    Poly reduce(const Monomial& mono) const {
        {
            std::lock_guard<std::mutex> lock(cache_mu_);
            auto it = nf_cache_.find(mono.exps);
            if (it != nf_cache_.end()) return it->second;
        }
        Poly nf = normal_form(Poly::monomial(table(), mono), gb);
        std::lock_guard<std::mutex> lock(cache_mu_);
        return nf_cache_.emplace(mono.exps, std::move(nf)).first->second;
    }
    Poly reduce(const Poly& p) const { return normal_form(p, gb); }

    /// Generic entry point: quotient by arbitrary homogeneous generators.
    /// No structural invariants are assumed; infinite quotients keep a basis
    /// only up to enumeration_bound.
    static QuotientRing from_generators(TablePtr table, std::vector<Poly> gens, Limits limits = {},
                                        long long enumeration_bound = -1) {
        QuotientRing q;
        q.k = int(table->size());
        long long cap = limits.gb_grade_cap;
        q.gb = buchberger(table, std::move(gens), TermOrder{}, Budget{cap > 0 ? cap : -1, -1});
        auto fin = is_finite_dimensional(q.gb);
        q.finite = fin.finite;
        long long bound = fin.finite ? fin.degree_bound : enumeration_bound;
        if (bound < 0 && !fin.finite)
            throw error("from_generators: infinite quotient needs an enumeration bound");
        if (bound > limits.degree_limit)
            throw resource_exhausted("quotient degree " + std::to_string(bound) + " exceeds limit");
        q.basis_by_degree = standard_monomials(q.gb, bound);
        for (const auto& [d, v] : q.basis_by_degree)
            if (!v.empty()) q.top_degree = std::max(q.top_degree, d);
        if (q.total_dim() > limits.dim_limit)
            throw resource_exhausted("quotient dimension exceeds limit");
        return q;
    }

    /// The quotient F2[xi1..xik] / (zeta_{m+1}, ..., zeta_{m+k}) with its
    /// structural invariants verified: finite, one-dimensional top degree
    /// delta = 2(2^m-1)(2^k-1), palindromic dimension sequence.
    static QuotientRing build(int k, int m, Limits limits = {}) {
        if (k < 1 || m < 0) throw error("quotient: need k >= 1, m >= 0");
        long long predicted = (long long)gaussian_binomial_q2(m + k, k);
        if (predicted > limits.dim_limit)
            throw resource_exhausted("predicted dimension " + std::to_string(predicted) +
                                     " exceeds limit " + std::to_string(limits.dim_limit));
        long long delta = 2 * ((1LL << m) - 1) * ((1LL << k) - 1);
        if (delta > limits.degree_limit)
            throw resource_exhausted("top degree " + std::to_string(delta) + " exceeds limit");

        std::vector<Poly> gens;
        for (int i = 1; i <= k; ++i) gens.push_back(zeta(m + i, TruncationSpec::trunc(k)));
        Limits inner = limits;
        if (inner.gb_grade_cap == 0) {
            // twice the top degree, widened when a generator outweighs delta
            // (m < k cases; S-pair grades reach past 2*delta there)
            long long gen_max = (1LL << (m + k)) - 1;
            inner.gb_grade_cap = 2 * std::max(delta, gen_max) + 2;
        }
        QuotientRing q = from_generators(xi_table(k), std::move(gens), inner);
        q.m = m;

        if (!q.finite) throw invariant_violation("quotient: expected a finite-dimensional ring");
        if (q.top_degree != delta || q.dim_at(delta) != 1)
            throw invariant_violation("quotient: top degree is not one-dimensional at delta");
        for (long long d = 0; d <= delta; ++d)
            if (q.dim_at(d) != q.dim_at(delta - d))
                throw invariant_violation("quotient: dimension sequence is not palindromic");
        return q;
    }

private:
    mutable std::mutex cache_mu_;
    mutable std::map<std::vector<Exp>, Poly> nf_cache_;

public:
    QuotientRing() = default;
    QuotientRing(const QuotientRing& o)
        : k(o.k), m(o.m), gb(o.gb), basis_by_degree(o.basis_by_degree), top_degree(o.top_degree),
          finite(o.finite) {}
    QuotientRing& operator=(const QuotientRing& o) {
        k = o.k;
        m = o.m;
        gb = o.gb;
        basis_by_degree = o.basis_by_degree;
        top_degree = o.top_degree;
        finite = o.finite;
        std::lock_guard<std::mutex> lock(cache_mu_);
        nf_cache_.clear();
        return *this;
    }
};

/// Dimension generating function read off the standard-monomial basis.
inline IntSeries poincare_series(const QuotientRing& q) {
    IntSeries s = IntSeries::from_dims(q.dims());
    if (!s.nonnegative()) throw invariant_violation("poincare_series: negative coefficient");
    return s;
}

struct FrobeniusRow {
    long long t = 0;
    long long dim_t = 0, dim_dual = 0;
    long long rank = 0;
    bool nonsingular = false;
};

struct FrobeniusReport {
    long long top_degree = -1;
    std::vector<FrobeniusRow> rows;
    bool all_nonsingular = true;
};

/// For every degree t, the multiplication pairing into the one-dimensional
/// top degree. Failures are reported, not thrown, so degenerate inputs can
/// be analyzed with the same entry point.
inline FrobeniusReport frobenius_check(const QuotientRing& q) {
    FrobeniusReport rep;
    rep.top_degree = q.top_degree;
    if (q.top_degree < 0) {
        rep.all_nonsingular = false;
        return rep;
    }
    // a Frobenius socle is one-dimensional; keep reporting when it is not,
    // pairing against the first top-degree basis monomial
    if (q.dim_at(q.top_degree) != 1) rep.all_nonsingular = false;
    const Monomial& top = q.basis_by_degree.at(q.top_degree)[0];
    for (long long t = 0; t <= q.top_degree; ++t) {
        FrobeniusRow row;
        row.t = t;
        row.dim_t = q.dim_at(t);
        row.dim_dual = q.dim_at(q.top_degree - t);
        if (row.dim_t == 0 && row.dim_dual == 0) {
            row.nonsingular = true;  // vacuous pairing
            rep.rows.push_back(row);
            continue;
        }
        const auto& xs = q.basis_by_degree.at(t);
        const auto& ys = q.basis_by_degree.at(q.top_degree - t);
        std::vector<BitVec> rows;
        for (const auto& x : xs) {
            BitVec r(int(ys.size()));
            for (size_t j = 0; j < ys.size(); ++j) {
                Monomial prod;
                if (!try_mul(*q.table(), x, ys[j], prod)) continue;
                Poly nf = q.reduce(prod);
                // homogeneous of top degree, so the normal form is 0 or top
                bool hit = false;
                for (const auto& term : nf.terms())
                    if (term == top) hit = true;
                if (hit) r.set(int(j));
            }
            rows.push_back(std::move(r));
        }
        row.rank = gf2_rank(std::move(rows), int(ys.size()));
        row.nonsingular = row.dim_t == row.dim_dual && row.rank == row.dim_t;
        rep.all_nonsingular = rep.all_nonsingular && row.nonsingular;
        rep.rows.push_back(row);
    }
    return rep;
}

/// Hilbert-series regularity certificate: the quotient is finite-dimensional
/// and its Poincare series equals the closed form.
inline bool regularity_check(int k, int m, Limits limits = {}) {
    QuotientRing q;
    try {
        q = QuotientRing::build(k, m, limits);
    } catch (const invariant_violation&) {
        return false;
    }
    return poincare_series(q) == closed_form_poincare(k, m);
}

/// Same certificate applied to arbitrary generators in place of the
/// conjugate classes (the negative-control entry point).
inline bool regularity_check_generators(TablePtr table, std::vector<Poly> gens, int k, int m,
                                        Limits limits = {}) {
    long long delta = 2 * ((1LL << m) - 1) * ((1LL << k) - 1);
    long long gen_max = 0;
    for (const auto& g : gens) gen_max = std::max(gen_max, g.degree());
    Limits inner = limits;
    if (inner.gb_grade_cap == 0) inner.gb_grade_cap = 2 * std::max(delta, gen_max) + 2;
    QuotientRing q = QuotientRing::from_generators(table, std::move(gens), inner, delta + 1);
    if (!q.finite) return false;
    return poincare_series(q) == closed_form_poincare(k, m);
}

/// Dimensions of quotient(k,m) tensored with one shifted class e_{j*2^(m+k+1)}
/// for each 0 <= j < 2^n; the top degree equals delta(k, m, n).
inline std::map<long long, long long> split_dims(int k, int m, int n, Limits limits = {}) {
    if (n < 0 || n > 20) throw error("split_dims: bad n");
    QuotientRing q = QuotientRing::build(k, m, limits);
    long long shift = 1LL << (m + k + 1);
    std::map<long long, long long> out;
    for (long long j = 0; j < (1LL << n); ++j)
        for (const auto& [d, v] : q.dims()) out[d + j * shift] += v;
    long long top = out.rbegin()->first;
    if (top != delta_degree(k, m, n))
        throw invariant_violation("split_dims: top degree does not match delta");
    return out;
}

}  // namespace milnor
