#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "milnor/errors.hpp"

namespace milnor {

enum class Parity : uint8_t { polynomial, exterior };

struct Variable {
    std::string name;
    long long degree = 0;  // topological degree, may be negative
    Parity parity = Parity::polynomial;
    int weight = 0;  // Adams weight

    bool operator==(const Variable&) const = default;
};

/// Ordered list of graded variables. Immutable once built.
class VariableTable {
public:
    explicit VariableTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
        for (size_t i = 0; i < vars_.size(); ++i)
            for (size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i].name == vars_[j].name)
                    throw invariant_violation("duplicate variable name: " + vars_[i].name);
    }

    size_t size() const { return vars_.size(); }
    const Variable& operator[](size_t i) const { return vars_[i]; }
    const std::vector<Variable>& vars() const { return vars_; }

    int index_of(std::string_view name) const {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return int(i);
        return -1;
    }

    bool has_exterior() const {
        for (const auto& v : vars_)
            if (v.parity == Parity::exterior) return true;
        return false;
    }

    bool operator==(const VariableTable& o) const { return vars_ == o.vars_; }

private:
    std::vector<Variable> vars_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

inline TablePtr make_table(std::vector<Variable> vars) {
    return std::make_shared<VariableTable>(std::move(vars));
}

inline bool same_table(const TablePtr& a, const TablePtr& b) {
    return a == b || (a && b && *a == *b);
}

/// F2[xi1, ..., xin] with |xi_i| = 2^i - 1, Adams weight 1. Tables are shared per n.
inline TablePtr xi_table(int n) {
    if (n < 0 || n > 40) throw error("xi_table: bad size " + std::to_string(n));
    static std::mutex mu;
    static std::map<int, TablePtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Variable> vars;
    for (int i = 1; i <= n; ++i)
        vars.push_back({"xi" + std::to_string(i), (1LL << i) - 1, Parity::polynomial, 1});
    return cache[n] = make_table(std::move(vars));
}

using Exp = int32_t;

/// Exponent vector aligned to a VariableTable.
struct Monomial {
    std::vector<Exp> exps;

    bool operator==(const Monomial&) const = default;
    bool is_unit() const {
        for (Exp e : exps)
            if (e) return false;
        return true;
    }
};

inline Monomial unit_monomial(const VariableTable& t) { return Monomial{std::vector<Exp>(t.size(), 0)}; }

inline long long degree_of(const VariableTable& t, const Monomial& m) {
    long long d = 0;
    for (size_t i = 0; i < m.exps.size(); ++i) d += (long long)m.exps[i] * t[i].degree;
    return d;
}

inline long long weight_of(const VariableTable& t, const Monomial& m) {
    long long w = 0;
    for (size_t i = 0; i < m.exps.size(); ++i) w += (long long)m.exps[i] * t[i].weight;
    return w;
}

inline Exp checked_exp_add(Exp a, Exp b) {
    long long s = (long long)a + b;
    if (s > std::numeric_limits<Exp>::max())
        throw overflow_error("exponent overflow: " + std::to_string(s));
    return Exp(s);
}

/// Product of monomials; false means the product is zero (exterior square).
inline bool try_mul(const VariableTable& t, const Monomial& a, const Monomial& b, Monomial& out) {
    out.exps.resize(a.exps.size());
    for (size_t i = 0; i < a.exps.size(); ++i) {
        Exp e = checked_exp_add(a.exps[i], b.exps[i]);
        if (e > 1 && t[i].parity == Parity::exterior) return false;
        out.exps[i] = e;
    }
    return true;
}

inline bool divides(const Monomial& a, const Monomial& b) {  // a | b
    for (size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] > b.exps[i]) return false;
    return true;
}

inline Monomial quotient(const Monomial& b, const Monomial& a) {  // b / a
    Monomial q;
    q.exps.resize(b.exps.size());
    for (size_t i = 0; i < b.exps.size(); ++i) q.exps[i] = b.exps[i] - a.exps[i];
    return q;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.exps.resize(a.exps.size());
    for (size_t i = 0; i < a.exps.size(); ++i) m.exps[i] = std::max(a.exps[i], b.exps[i]);
    return m;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] > 0 && b.exps[i] > 0) return false;
    return true;
}

/// Tie-break shared by both orders: at the last differing position the
/// smaller exponent wins (reverse lexicographic).
inline int revlex_cmp(const Monomial& a, const Monomial& b) {
    for (size_t i = a.exps.size(); i-- > 0;) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? 1 : -1;
    }
    return 0;
}

/// Canonical order: graded by topological degree, then reverse lexicographic.
/// Returns >0 if a is greater.
inline int canon_cmp(const VariableTable& t, const Monomial& a, const Monomial& b) {
    long long da = degree_of(t, a), db = degree_of(t, b);
    if (da != db) return da > db ? 1 : -1;
    return revlex_cmp(a, b);
}

/// Exponent-count graded order used by the presented-algebra engine, where
/// topological degrees can be negative.
inline int count_cmp(const VariableTable&, const Monomial& a, const Monomial& b) {
    long long ca = 0, cb = 0;
    for (Exp e : a.exps) ca += e;
    for (Exp e : b.exps) cb += e;
    if (ca != cb) return ca > cb ? 1 : -1;
    return revlex_cmp(a, b);
}

/// Finite set of monomials over one table; coefficients in F2 are implicit.
/// Terms are kept sorted descending in the canonical order.
class Poly {
public:
    Poly() = default;

    static Poly zero(TablePtr t) { return Poly(std::move(t), {}); }
    static Poly one(TablePtr t) {
        Monomial u = unit_monomial(*t);
        return Poly(std::move(t), {u});
    }
    static Poly monomial(TablePtr t, Monomial m) {
        return from_terms(std::move(t), {std::move(m)});
    }
    static Poly variable(TablePtr t, int i) {
        Monomial m = unit_monomial(*t);
        m.exps.at(i) = 1;
        return Poly(std::move(t), {m});
    }
    static Poly variable(TablePtr t, std::string_view name) {
        int i = t->index_of(name);
        if (i < 0) throw error("unknown variable: " + std::string(name));
        return variable(std::move(t), i);
    }
    /// Builds from arbitrary terms, cancelling duplicate pairs (F2).
    static Poly from_terms(TablePtr t, std::vector<Monomial> terms) {
        Poly p(std::move(t), {});
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    const TablePtr& table() const { return table_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].is_unit(); }
    size_t term_count() const { return terms_.size(); }

    bool operator==(const Poly& o) const {
        return same_table(table_, o.table_) && terms_ == o.terms_;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same(a, b);
        const VariableTable& t = *a.table_;
        std::vector<Monomial> out;
        out.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = canon_cmp(t, a.terms_[i], b.terms_[j]);
            if (c > 0)
                out.push_back(a.terms_[i++]);
            else if (c < 0)
                out.push_back(b.terms_[j++]);
            else {
                ++i, ++j;  // cancel
            }
        }
        out.insert(out.end(), a.terms_.begin() + i, a.terms_.end());
        out.insert(out.end(), b.terms_.begin() + j, b.terms_.end());
        return Poly(a.table_, std::move(out), sorted_tag{});
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same(a, b);
        const VariableTable& t = *a.table_;
        std::vector<Monomial> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        Monomial prod;
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_)
                if (try_mul(t, x, y, prod)) out.push_back(prod);
        return from_terms(a.table_, std::move(out));
    }

    /// Frobenius square: in characteristic 2 cross terms cancel pairwise.
    Poly square() const {
        const VariableTable& t = *table_;
        std::vector<Monomial> out;
        out.reserve(terms_.size());
        Monomial sq;
        for (const auto& m : terms_)
            if (try_mul(t, m, m, sq)) out.push_back(sq);
        return from_terms(table_, std::move(out));
    }

    Poly pow(long long n) const {
        if (n < 0) throw error("negative exponent");
        Poly acc = one(table_);
        Poly base = *this;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            n >>= 1;
            if (n) base = base.square();
        }
        return acc;
    }

    /// Topological degree of each term if homogeneous, otherwise nullopt.
    std::optional<long long> homogeneous_degree() const {
        if (terms_.empty()) return 0;
        long long d = degree_of(*table_, terms_[0]);
        for (const auto& m : terms_)
            if (degree_of(*table_, m) != d) return std::nullopt;
        return d;
    }

    /// Max topological degree over the terms (zero poly: 0).
    long long degree() const {
        long long d = 0;
        bool first = true;
        for (const auto& m : terms_) {
            long long x = degree_of(*table_, m);
            if (first || x > d) d = x;
            first = false;
        }
        return d;
    }

    static void require_same(const Poly& a, const Poly& b) {
        if (!same_table(a.table_, b.table_)) throw table_mismatch("polynomials over different tables");
    }

private:
    struct sorted_tag {};
    Poly(TablePtr t, std::vector<Monomial> terms) : table_(std::move(t)), terms_(std::move(terms)) {}
    Poly(TablePtr t, std::vector<Monomial> terms, sorted_tag)
        : table_(std::move(t)), terms_(std::move(terms)) {}

    void canonicalize() {
        const VariableTable& t = *table_;
        for (const auto& m : terms_) {
            if (m.exps.size() != t.size()) throw table_mismatch("term length does not match table");
            for (size_t i = 0; i < t.size(); ++i) {
                if (m.exps[i] < 0) throw error("negative exponent");
                if (m.exps[i] > 1 && t[i].parity == Parity::exterior)
                    throw error("exterior variable with exponent above 1: " + t[i].name);
            }
        }
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Monomial& a, const Monomial& b) { return canon_cmp(t, a, b) > 0; });
        std::vector<Monomial> out;
        out.reserve(terms_.size());
        for (size_t i = 0; i < terms_.size();) {
            size_t j = i;
            while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
            if ((j - i) & 1) out.push_back(terms_[i]);
            i = j;
        }
        terms_ = std::move(out);
    }

    TablePtr table_;
    std::vector<Monomial> terms_;
};

/// Sum of the terms of minimal Adams weight (the monomial-degree filtration).
inline Poly adams_leading_part(const Poly& p) {
    if (p.is_zero()) throw error("adams_leading_part of zero");
    const VariableTable& t = *p.table();
    long long best = weight_of(t, p.terms()[0]);
    for (const auto& m : p.terms()) best = std::min(best, weight_of(t, m));
    std::vector<Monomial> keep;
    for (const auto& m : p.terms())
        if (weight_of(t, m) == best) keep.push_back(m);
    return Poly::from_terms(p.table(), std::move(keep));
}

/// Binomial coefficient mod 2 (Lucas: 1 iff the base-2 digits of i are
/// dominated by those of j).
inline int binom_mod2(unsigned long long j, unsigned long long i) {
    if (i > j) return 0;
    return (i & j) == i ? 1 : 0;
}

/// Re-express p over a table that contains all of p's variables by name.
inline Poly rebase(const Poly& p, const TablePtr& target) {
    const VariableTable& from = *p.table();
    const VariableTable& to = *target;
    std::vector<int> map(from.size());
    for (size_t i = 0; i < from.size(); ++i) {
        int j = to.index_of(from[i].name);
        if (j < 0) {
            // dropped variable: only legal if it never occurs
            map[i] = -1;
            continue;
        }
        // parity may differ (the presented-algebra engine erases it)
        if (from[i].degree != to[size_t(j)].degree || from[i].weight != to[size_t(j)].weight)
            throw table_mismatch("variable mismatch: " + from[i].name);
        map[i] = j;
    }
    std::vector<Monomial> out;
    for (const auto& m : p.terms()) {
        Monomial n = unit_monomial(to);
        bool ok = true;
        for (size_t i = 0; i < from.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (map[i] < 0) {
                ok = false;
                break;
            }
            n.exps[map[i]] = m.exps[i];
        }
        if (!ok) throw table_mismatch("variable not present in target table");
        out.push_back(std::move(n));
    }
    return Poly::from_terms(target, std::move(out));
}

/// Set the named variables to zero and drop them from the table.
inline Poly set_to_zero(const Poly& p, const std::vector<std::string>& names) {
    const VariableTable& from = *p.table();
    std::vector<Variable> keep_vars;
    std::vector<bool> kill(from.size(), false);
    for (size_t i = 0; i < from.size(); ++i) {
        bool k = std::find(names.begin(), names.end(), from[i].name) != names.end();
        kill[i] = k;
        if (!k) keep_vars.push_back(from[i]);
    }
    TablePtr target = make_table(keep_vars);
    std::vector<Monomial> out;
    for (const auto& m : p.terms()) {
        bool drop = false;
        Monomial n = unit_monomial(*target);
        size_t j = 0;
        for (size_t i = 0; i < from.size(); ++i) {
            if (kill[i]) {
                if (m.exps[i] != 0) drop = true;
            } else {
                n.exps[j++] = m.exps[i];
            }
        }
        if (!drop) out.push_back(std::move(n));
    }
    return Poly::from_terms(target, std::move(out));
}

}  // namespace milnor
