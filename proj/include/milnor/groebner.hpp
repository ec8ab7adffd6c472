#pragma once

#include <map>
#include <set>
#include <tuple>
#include <variant>
#include <vector>

#include "milnor/poly.hpp"

namespace milnor {

/// Graded term order: compare the grading first, then reverse lexicographic.
/// The topological grading requires positive variable degrees to be a
/// monomial order; the exponent-count grading works for any table.
struct TermOrder {
    enum class Grading : uint8_t { topological, exponent_count };
    Grading grading = Grading::topological;

    long long grade(const VariableTable& t, const Monomial& m) const {
        if (grading == Grading::topological) return degree_of(t, m);
        long long c = 0;
        for (Exp e : m.exps) c += e;
        return c;
    }
    int cmp(const VariableTable& t, const Monomial& a, const Monomial& b) const {
        long long ga = grade(t, a), gb = grade(t, b);
        if (ga != gb) return ga > gb ? 1 : -1;
        return revlex_cmp(a, b);
    }
    bool less(const VariableTable& t, const Monomial& a, const Monomial& b) const {
        return cmp(t, a, b) < 0;
    }
    bool operator==(const TermOrder&) const = default;
};

/// Hard caps on Buchberger; exceeding one raises resource_exhausted.
struct Budget {
    long long max_grade = -1;  // cap on S-pair lcm grade; -1 = unlimited
    long long max_steps = -1;  // cap on processed S-pairs
};

namespace detail {

// Engine-internal polynomial: terms sorted descending under the engine order.
struct GPoly {
    std::vector<Monomial> terms;
    std::vector<Poly> cofs;  // optional cofactors over the original generators
};

struct Engine {
    const VariableTable& t;
    TermOrder ord;

    bool less(const Monomial& a, const Monomial& b) const { return ord.cmp(t, a, b) < 0; }

    std::vector<Monomial> sorted(std::vector<Monomial> v) const {
        std::sort(v.begin(), v.end(),
                  [&](const Monomial& a, const Monomial& b) { return ord.cmp(t, a, b) > 0; });
        return v;
    }

    std::vector<Monomial> add(const std::vector<Monomial>& a, const std::vector<Monomial>& b) const {
        std::vector<Monomial> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            int c = ord.cmp(t, a[i], b[j]);
            if (c > 0)
                out.push_back(a[i++]);
            else if (c < 0)
                out.push_back(b[j++]);
            else
                ++i, ++j;
        }
        out.insert(out.end(), a.begin() + i, a.end());
        out.insert(out.end(), b.begin() + j, b.end());
        return out;
    }

    std::vector<Monomial> mul_mono(const std::vector<Monomial>& a, const Monomial& m) const {
        std::vector<Monomial> out;
        out.reserve(a.size());
        Monomial prod;
        for (const auto& x : a)
            if (try_mul(t, x, m, prod)) out.push_back(prod);
        // multiplication by a monomial preserves the order of surviving terms
        return out;
    }
};

}  // namespace detail

/// Reduced Groebner basis with the order, the originating generators, and
/// (optionally) cofactor expressions of each basis element over them.
class GroebnerBasis {
public:
    const TablePtr& table() const { return table_; }
    const TermOrder& order() const { return order_; }
    const std::vector<Poly>& generators() const { return gens_; }
    const std::vector<Poly>& basis() const { return basis_; }
    const std::vector<Monomial>& leading_terms() const { return leads_; }
    bool tracks_cofactors() const { return !cofs_.empty(); }
    /// basis()[i] = sum_j basis_cofactors()[i][j] * generators()[j]
    const std::vector<std::vector<Poly>>& basis_cofactors() const { return cofs_; }

    friend GroebnerBasis buchberger_impl(TablePtr, std::vector<Poly>, TermOrder, Budget, bool, bool);

private:
    TablePtr table_;
    TermOrder order_;
    std::vector<Poly> gens_;
    std::vector<Poly> basis_;
    std::vector<Monomial> leads_;
    std::vector<std::vector<Poly>> cofs_;
};

namespace detail {

// Fully reduce `work` against the basis; returns the remainder and, when
// tracking, accumulates quotients against basis elements.
inline std::vector<Monomial> reduce_full(const Engine& eng, std::vector<Monomial> work,
                                         const std::vector<GPoly>& basis,
                                         std::vector<std::vector<Monomial>>* quotients) {
    std::vector<Monomial> remainder;
    while (!work.empty()) {
        const Monomial& lead = work.front();
        int hit = -1;
        for (size_t g = 0; g < basis.size(); ++g)
            if (!basis[g].terms.empty() && divides(basis[g].terms.front(), lead)) {
                hit = int(g);
                break;
            }
        if (hit < 0) {
            remainder.push_back(lead);
            work.erase(work.begin());
            continue;
        }
        Monomial q = quotient(lead, basis[hit].terms.front());
        work = eng.add(work, eng.mul_mono(basis[hit].terms, q));
        if (quotients) (*quotients)[hit].push_back(q);
    }
    return remainder;
}

}  // namespace detail

/// Buchberger's algorithm with the normal selection strategy (S-pairs in
/// ascending lcm grade, ties by the term order then indices), followed by
/// minimalization and full inter-reduction. Deterministic for fixed input.
inline GroebnerBasis buchberger_impl(TablePtr table, std::vector<Poly> gens, TermOrder order,
                                     Budget budget, bool track_cofactors, bool allow_exterior) {
    if (!allow_exterior && table->has_exterior())
        throw error("buchberger: exterior variables are not supported here");
    if (order.grading == TermOrder::Grading::topological)
        for (const auto& v : table->vars())
            if (v.degree <= 0) throw error("buchberger: topological order needs positive degrees");
    for (const auto& g : gens)
        if (!same_table(g.table(), table)) throw table_mismatch("generator over a different table");

    detail::Engine eng{*table, order};
    std::vector<detail::GPoly> basis;
    auto push = [&](std::vector<Monomial> terms, std::vector<Poly> cofs) {
        basis.push_back({std::move(terms), std::move(cofs)});
    };

    for (size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].is_zero()) continue;
        std::vector<Poly> cofs;
        if (track_cofactors) {
            cofs.assign(gens.size(), Poly::zero(table));
            cofs[j] = Poly::one(table);
        }
        push(eng.sorted(gens[j].terms()), std::move(cofs));
    }

    // pair queue keyed by (lcm grade, lcm, i, j)
    struct PairKey {
        long long grade;
        Monomial l;
        size_t i, j;
    };
    auto key_less = [&](const PairKey& a, const PairKey& b) {
        if (a.grade != b.grade) return a.grade < b.grade;
        int c = order.cmp(*table, a.l, b.l);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    // TODO: add the chain criterion; the product criterion alone is enough
    // at the sizes these ideals reach
    std::multiset<PairKey, decltype(key_less)> queue(key_less);
    auto enqueue = [&](size_t i, size_t j) {
        const Monomial &a = basis[i].terms.front(), &b = basis[j].terms.front();
        if (coprime(a, b)) return;  // product criterion
        Monomial l = lcm(a, b);
        queue.insert(PairKey{order.grade(*table, l), l, i, j});
    };
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) enqueue(i, j);

    long long steps = 0;
    while (!queue.empty()) {
        PairKey pk = *queue.begin();
        queue.erase(queue.begin());
        if (budget.max_grade >= 0 && pk.grade > budget.max_grade)
            throw resource_exhausted("buchberger: S-pair grade " + std::to_string(pk.grade) +
                                     " exceeds cap " + std::to_string(budget.max_grade));
        if (budget.max_steps >= 0 && ++steps > budget.max_steps)
            throw resource_exhausted("buchberger: step cap exceeded");

        const auto &f = basis[pk.i], &g = basis[pk.j];
        Monomial uf = quotient(pk.l, f.terms.front());
        Monomial ug = quotient(pk.l, g.terms.front());
        std::vector<Monomial> s = eng.add(eng.mul_mono(f.terms, uf), eng.mul_mono(g.terms, ug));

        std::vector<std::vector<Monomial>> quots;
        if (track_cofactors) quots.assign(basis.size(), {});
        std::vector<Monomial> r =
            detail::reduce_full(eng, std::move(s), basis, track_cofactors ? &quots : nullptr);
        if (r.empty()) continue;

        std::vector<Poly> cofs;
        if (track_cofactors) {
            cofs.assign(gens.size(), Poly::zero(table));
            auto acc = [&](const std::vector<Poly>& src, const Poly& mult) {
                for (size_t j2 = 0; j2 < gens.size(); ++j2) cofs[j2] = cofs[j2] + mult * src[j2];
            };
            acc(f.cofs, Poly::monomial(table, uf));
            acc(g.cofs, Poly::monomial(table, ug));
            for (size_t b = 0; b < quots.size(); ++b)
                for (const auto& q : quots[b]) acc(basis[b].cofs, Poly::monomial(table, q));
        }
        size_t idx = basis.size();
        push(std::move(r), std::move(cofs));
        for (size_t i = 0; i < idx; ++i) enqueue(i, idx);
    }

    // minimalize: drop elements whose lead is divisible by another kept lead
    std::vector<size_t> by_lead(basis.size());
    for (size_t i = 0; i < by_lead.size(); ++i) by_lead[i] = i;
    std::sort(by_lead.begin(), by_lead.end(), [&](size_t a, size_t b) {
        int c = order.cmp(*table, basis[a].terms.front(), basis[b].terms.front());
        return c != 0 ? c < 0 : a < b;
    });
    std::vector<detail::GPoly> kept;
    for (size_t i : by_lead) {
        bool redundant = false;
        for (const auto& k : kept)
            if (divides(k.terms.front(), basis[i].terms.front())) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(std::move(basis[i]));
    }

    // inter-reduce tails until stable
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < kept.size(); ++i) {
            std::vector<detail::GPoly> others;
            for (size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            std::vector<std::vector<Monomial>> quots;
            if (track_cofactors) quots.assign(others.size(), {});
            std::vector<Monomial> r = detail::reduce_full(eng, kept[i].terms, others,
                                                          track_cofactors ? &quots : nullptr);
            if (r != kept[i].terms) {
                changed = true;
                if (track_cofactors) {
                    size_t oi = 0;
                    for (size_t j = 0; j < kept.size(); ++j) {
                        if (j == i) continue;
                        for (const auto& q : quots[oi])
                            for (size_t j2 = 0; j2 < gens.size(); ++j2)
                                kept[i].cofs[j2] =
                                    kept[i].cofs[j2] + Poly::monomial(table, q) * kept[j].cofs[j2];
                        ++oi;
                    }
                }
                kept[i].terms = std::move(r);
            }
        }
    }

    GroebnerBasis out;
    out.table_ = table;
    out.order_ = order;
    out.gens_ = std::move(gens);
    for (auto& k : kept) {
        out.basis_.push_back(Poly::from_terms(table, k.terms));
        out.leads_.push_back(k.terms.front());
        if (track_cofactors) out.cofs_.push_back(std::move(k.cofs));
    }
    return out;
}

inline GroebnerBasis buchberger(TablePtr table, std::vector<Poly> gens,
                                TermOrder order = TermOrder{}, Budget budget = Budget{},
                                bool track_cofactors = false) {
    return buchberger_impl(std::move(table), std::move(gens), order, budget, track_cofactors,
                           /*allow_exterior=*/false);
}

/// Unique fully reduced remainder of p; zero iff p is in the ideal.
inline Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
    if (!same_table(p.table(), gb.table())) throw table_mismatch("normal_form: table mismatch");
    detail::Engine eng{*gb.table(), gb.order()};
    std::vector<detail::GPoly> basis;
    for (const auto& b : gb.basis()) basis.push_back({eng.sorted(b.terms()), {}});
    std::vector<Monomial> r = detail::reduce_full(eng, eng.sorted(p.terms()), basis, nullptr);
    return Poly::from_terms(gb.table(), std::move(r));
}

/// Remainder plus quotients against the basis: p = sum q_i * basis_i + r.
inline std::pair<Poly, std::vector<Poly>> normal_form_with_quotients(const Poly& p,
                                                                     const GroebnerBasis& gb) {
    if (!same_table(p.table(), gb.table())) throw table_mismatch("normal_form: table mismatch");
    detail::Engine eng{*gb.table(), gb.order()};
    std::vector<detail::GPoly> basis;
    for (const auto& b : gb.basis()) basis.push_back({eng.sorted(b.terms()), {}});
    std::vector<std::vector<Monomial>> quots(basis.size());
    std::vector<Monomial> r = detail::reduce_full(eng, eng.sorted(p.terms()), basis, &quots);
    std::vector<Poly> qp;
    for (auto& q : quots) qp.push_back(Poly::from_terms(gb.table(), std::move(q)));
    return {Poly::from_terms(gb.table(), std::move(r)), std::move(qp)};
}

/// Certificate p = sum cofactors[j] * generators[j]; re-verified exactly on
/// construction.
struct CofactorCertificate {
    Poly member;
    std::vector<Poly> generators;
    std::vector<Poly> cofactors;

    void verify() const {
        Poly acc = Poly::zero(member.table());
        for (size_t j = 0; j < generators.size(); ++j) acc = acc + cofactors[j] * generators[j];
        if (!(acc == member)) throw invariant_violation("cofactor certificate failed to re-verify");
    }
};

/// Ideal-membership query with an explicit certificate over the original
/// generators when p reduces to zero; otherwise the nonzero normal form.
inline std::variant<CofactorCertificate, Poly> reduce_with_cofactors(const Poly& p,
                                                                    std::vector<Poly> gens,
                                                                    TermOrder order = TermOrder{},
                                                                    Budget budget = Budget{}) {
    GroebnerBasis gb = buchberger(p.table(), std::move(gens), order, budget, /*cofactors=*/true);
    auto [r, quots] = normal_form_with_quotients(p, gb);
    if (!r.is_zero()) return r;
    CofactorCertificate cert;
    cert.member = p;
    cert.generators = gb.generators();
    cert.cofactors.assign(cert.generators.size(), Poly::zero(p.table()));
    for (size_t i = 0; i < gb.basis().size(); ++i)
        for (size_t j = 0; j < cert.generators.size(); ++j)
            cert.cofactors[j] = cert.cofactors[j] + quots[i] * gb.basis_cofactors()[i][j];
    cert.verify();
    return cert;
}

namespace detail {

template <typename Fn>
inline void enumerate_monomials(const VariableTable& t, long long bound, size_t idx, Monomial& m,
                                long long used, Fn&& fn) {
    if (idx == t.size()) {
        fn(m);
        return;
    }
    long long w = t[idx].degree;
    long long cap = t[idx].parity == Parity::exterior ? 1 : (bound - used) / w;
    for (Exp e = 0; e <= cap; ++e) {
        m.exps[idx] = e;
        enumerate_monomials(t, bound, idx + 1, m, used + e * w, fn);
    }
    m.exps[idx] = 0;
}

}  // namespace detail

/// All monomials of degree <= bound not divisible by any leading term,
/// grouped by topological degree (a basis of the quotient in that range).
inline std::map<long long, std::vector<Monomial>> standard_monomials(const GroebnerBasis& gb,
                                                                     long long bound) {
    for (const auto& v : gb.table()->vars())
        if (v.degree <= 0) throw error("standard_monomials: needs positive variable degrees");
    const VariableTable& t = *gb.table();
    std::map<long long, std::vector<Monomial>> out;
    Monomial m = unit_monomial(t);
    detail::enumerate_monomials(t, bound, 0, m, 0, [&](const Monomial& cand) {
        for (const auto& l : gb.leading_terms())
            if (divides(l, cand)) return;
        out[degree_of(t, cand)].push_back(cand);
    });
    for (auto& [d, v] : out)
        std::sort(v.begin(), v.end(),
                  [&](const Monomial& a, const Monomial& b) { return canon_cmp(t, a, b) > 0; });
    return out;
}

struct FinitenessResult {
    bool finite = false;
    long long degree_bound = -1;  // max degree of a standard monomial when finite
};

/// Dickson's criterion: the quotient is finite-dimensional iff a pure power
/// of every variable appears among the leading terms. When finite, returns
/// the top degree carrying a standard monomial (-1 if the quotient is zero).
inline FinitenessResult is_finite_dimensional(const GroebnerBasis& gb) {
    const VariableTable& t = *gb.table();
    long long crude = 0;
    for (size_t v = 0; v < t.size(); ++v) {
        long long best = -1;
        for (const auto& l : gb.leading_terms()) {
            bool pure = l.exps[v] > 0;
            for (size_t w = 0; pure && w < t.size(); ++w)
                if (w != v && l.exps[w] > 0) pure = false;
            if (pure && (best < 0 || l.exps[v] < best)) best = l.exps[v];
        }
        if (best < 0) return {false, -1};
        crude += (best - 1) * t[v].degree;
    }
    auto std_mons = standard_monomials(gb, crude);
    long long top = -1;
    for (const auto& [d, v] : std_mons)
        if (!v.empty()) top = std::max(top, d);
    return {true, top};
}

}  // namespace milnor
