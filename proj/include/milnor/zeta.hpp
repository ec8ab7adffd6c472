#pragma once

#include <map>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "milnor/poly.hpp"

namespace milnor {

/// Either the full ring F2[xi1..xiN] or the truncation with xi_{k+1} = ... = 0.
struct TruncationSpec {
    enum class Kind : uint8_t { full, truncated };
    Kind kind = Kind::full;
    int bound = 0;  // N for full, k for truncated

    static TruncationSpec full(int n) { return {Kind::full, n}; }
    static TruncationSpec trunc(int k) { return {Kind::truncated, k}; }

    TablePtr table() const { return xi_table(bound); }
    bool operator==(const TruncationSpec&) const = default;
    auto key() const { return std::tuple(int(kind), bound); }
};

namespace detail {

inline Poly zeta_uncached(int n, const TruncationSpec& spec) {
    TablePtr t = spec.table();
    std::vector<Poly> z;
    z.push_back(Poly::one(t));
    for (int s = 1; s <= n; ++s) {
        // Conjugation recursion: zeta_s = sum_i xi_i^(2^(s-i)) zeta_{s-i},
        // with xi_i = 0 above the truncation bound.
        int top = spec.kind == TruncationSpec::Kind::truncated ? std::min(s, spec.bound) : s;
        Poly acc = Poly::zero(t);
        for (int i = 1; i <= top; ++i) {
            if (s - i > 30) throw overflow_error("zeta exponent 2^" + std::to_string(s - i));
            acc = acc + Poly::variable(t, i - 1).pow(1LL << (s - i)) * z[s - i];
        }
        z.push_back(acc);
    }
    return z[n];
}

}  // namespace detail

/// The conjugate class zeta_n, homogeneous of degree 2^n - 1 (zeta_0 = 1).
/// Cached by (n, spec); safe for concurrent use.
inline Poly zeta(int n, TruncationSpec spec) {
    if (n < 0) throw error("zeta: n must be >= 0");
    if (spec.bound < 1) throw error("zeta: truncation bound must be >= 1");
    if (spec.kind == TruncationSpec::Kind::full && n > spec.bound)
        throw error("zeta: full ring needs at least n variables");
    using Key = std::tuple<int, int, int>;
    static std::shared_mutex mu;
    static std::map<Key, Poly> cache;
    Key key{int(spec.kind), spec.bound, n};
    {
        std::shared_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Poly p = detail::zeta_uncached(n, spec);
    std::unique_lock lock(mu);
    return cache.emplace(key, std::move(p)).first->second;
}

/// Checks that the conjugation recursion and power-series inversion agree:
/// sum_{i+j=n} xi_i^(2^j) zeta_j = 0, and the composite of f(x) = sum xi_i x^(2^i)
/// with its inverse is the identity through x^(2^n). The inverse series is
/// recomputed here independently of zeta()'s recursion.
inline bool verify_milnor_identity(int n, int nvars) {
    if (n < 1 || nvars < n) return false;
    TablePtr t = xi_table(nvars);
    auto xi = [&](int i) { return i == 0 ? Poly::one(t) : Poly::variable(t, i - 1); };

    std::vector<Poly> z;  // recursion route
    for (int m = 0; m <= n; ++m) z.push_back(zeta(m, TruncationSpec::full(nvars)));

    // g(f(x)) = x: coefficient of x^(2^m) is sum_{i+j=m} xi_i^(2^j) zeta_j
    for (int m = 1; m <= n; ++m) {
        Poly acc = Poly::zero(t);
        for (int i = 0; i <= m; ++i) acc = acc + xi(i).pow(1LL << (m - i)) * z[m - i];
        if (!acc.is_zero()) return false;
    }

    // independent inversion: solve f(g(x)) = x coefficient-wise
    std::vector<Poly> w;
    w.push_back(Poly::one(t));
    for (int m = 1; m <= n; ++m) {
        Poly acc = Poly::zero(t);
        for (int i = 1; i <= m; ++i) acc = acc + xi(i) * w[m - i].pow(1LL << i);
        w.push_back(acc);
    }
    for (int m = 1; m <= n; ++m) {
        if (!(w[m] == z[m])) return false;
        Poly acc = Poly::zero(t);  // f(g(x)) coefficient of x^(2^m)
        for (int i = 0; i <= m; ++i) acc = acc + xi(i) * z[m - i].pow(1LL << i);
        if (!acc.is_zero()) return false;
    }
    return true;
}

/// Dyer-Lashof operation Q1 on a homogeneous polynomial in the xi generators:
/// Q1(xi_j) = xi_{j+1} + xi_1 xi_j^2 extended by the Cartan formula
/// Q1(xy) = Q1(x) y^2 + x^2 Q1(y). Output is homogeneous of degree 2d + 1.
inline Poly q1(const Poly& p) {
    const TablePtr& t = p.table();
    if (!p.homogeneous_degree()) throw error("q1: input must be homogeneous");
    size_t nv = t->size();
    for (size_t i = 0; i < nv; ++i)
        if ((*t)[i].weight != 1 || (*t)[i].parity != Parity::polynomial ||
            (*t)[i].degree != (1LL << (i + 1)) - 1)
            throw error("q1: table is not a xi-generator table");

    // Q1(x^e) = 0 for even e, Q1(x) x^(2e-2) for odd e, so for a monomial
    // prod x_v^(e_v) the Cartan formula leaves one odd block per summand.
    auto q1_var = [&](size_t v) {  // variable v carries xi_{v+1}
        if (v + 1 >= nv)
            throw error("q1: generator index overflow, need xi" + std::to_string(v + 2));
        Monomial a = unit_monomial(*t), b = unit_monomial(*t);
        a.exps[v + 1] = 1;  // xi_{v+2}
        b.exps[0] = 1;      // xi_1 * xi_{v+1}^2
        b.exps[v] = checked_exp_add(b.exps[v], 2);
        return Poly::from_terms(t, {a, b});
    };

    Poly result = Poly::zero(t);
    for (const auto& m : p.terms()) {
        for (size_t v = 0; v < nv; ++v) {
            if (!(m.exps[v] & 1)) continue;
            Monomial rest;  // everything squared except one factor of x_v
            rest.exps.resize(nv);
            for (size_t w = 0; w < nv; ++w) {
                long long e = 2LL * m.exps[w] - (w == v ? 2 : 0);
                if (e > std::numeric_limits<Exp>::max()) throw overflow_error("q1 exponent overflow");
                rest.exps[w] = Exp(e);
            }
            result = result + q1_var(v) * Poly::monomial(t, rest);
        }
    }
    return result;
}

/// Closed-form single leading monomial of zeta_n in the truncated ring
/// F2[xi1..xik]: write n = kq + r with q >= 1, 1 <= r <= k; the monomial is
/// xi_r * xi_k^(2^r + 2^(r+k) + ... + 2^(n-k)).
inline Monomial zeta_leading_term(int n, int k) {
    if (k < 1 || n <= k) throw error("zeta_leading_term: need n > k >= 1");
    int r = (n - 1) % k + 1;
    Monomial m = unit_monomial(*xi_table(k));
    long long e = 0;
    for (int a = r; a <= n - k; a += k) {
        if (a > 30) throw overflow_error("zeta_leading_term exponent overflow");
        e += 1LL << a;
    }
    if (e > std::numeric_limits<Exp>::max()) throw overflow_error("zeta_leading_term exponent overflow");
    m.exps[r - 1] += 1;
    m.exps[k - 1] += Exp(e);
    return m;
}

/// Image of a full-ring polynomial under xi_{k+1} = xi_{k+2} = ... = 0.
inline Poly truncate_to(const Poly& p, int k) {
    std::vector<std::string> kill;
    for (size_t i = k; i < p.table()->size(); ++i) kill.push_back((*p.table())[i].name);
    Poly q = set_to_zero(p, kill);
    return rebase(q, xi_table(k));
}

}  // namespace milnor
