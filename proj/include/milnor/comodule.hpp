#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "milnor/gf2.hpp"
#include "milnor/poly.hpp"

namespace milnor {

/// The coalgebra F2[u] (u primitive, degree 2) or its quotient F2[u]/(u^(2^k)).
struct Coalgebra {
    enum class Kind : uint8_t { polynomial_u, truncated_u };
    Kind kind = Kind::polynomial_u;
    int k = 0;  // truncation: u^(2^k) = 0

    static Coalgebra poly_u() { return {Kind::polynomial_u, 0}; }
    static Coalgebra trunc_u(int k) {
        if (k < 1) throw error("coalgebra truncation needs k >= 1");
        return {Kind::truncated_u, k};
    }
    bool admits(long long power) const {
        return kind == Kind::polynomial_u || power < (1LL << k);
    }

    /// Counit and coassociativity of the binomial comultiplication on a
    /// sampled power range.
    bool verify(long long sample_bound = 32) const {
        for (long long n = 0; n <= sample_bound; ++n) {
            if (!admits(n)) break;
            if (!binom_mod2((unsigned long long)n, 0)) return false;  // counit
            for (long long a = 0; a <= n; ++a)
                for (long long b = 0; a + b <= n; ++b) {
                    // coefficient of u^a (x) u^b (x) u^(n-a-b) both ways
                    int lhs = binom_mod2((unsigned long long)n, (unsigned long long)(a + b)) &
                              binom_mod2((unsigned long long)(a + b), (unsigned long long)a);
                    int rhs = binom_mod2((unsigned long long)n, (unsigned long long)a) &
                              binom_mod2((unsigned long long)(n - a), (unsigned long long)b);
                    if (!admits(a) || !admits(b) || !admits(n - a - b)) lhs = rhs = 0;
                    if (lhs != rhs) return false;
                }
        }
        return true;
    }
};

/// A degreewise-finite comodule over F2[u]: finite basis {b_j} and the
/// coaction psi(b_j) = sum u^c (x) b_i recorded as (c, i) pairs.
/// Counit and coassociativity are verified on construction.
class Comodule {
public:
    struct Element {
        std::string name;
        long long degree = 0;
    };
    using CoactionTerm = std::pair<long long, int>;  // (power of u, basis index)

    Comodule(std::vector<Element> basis, std::vector<std::vector<CoactionTerm>> coaction)
        : basis_(std::move(basis)), coaction_(std::move(coaction)) {
        if (basis_.size() != coaction_.size()) throw error("comodule: coaction size mismatch");
        for (auto& terms : coaction_) std::sort(terms.begin(), terms.end());
        verify_counit();
        verify_coassociativity();
    }

    size_t size() const { return basis_.size(); }
    const std::vector<Element>& basis() const { return basis_; }
    const std::vector<std::vector<CoactionTerm>>& coaction() const { return coaction_; }

    /// Restriction along F2[u] -> F2[u]/(u^(2^k)): coaction terms with
    /// power >= 2^k vanish.
    Comodule restrict_to(const Coalgebra& c) const {
        std::vector<std::vector<CoactionTerm>> co = coaction_;
        for (auto& terms : co) {
            std::vector<CoactionTerm> keep;
            for (auto& t : terms)
                if (c.admits(t.first)) keep.push_back(t);
            terms = std::move(keep);
        }
        return Comodule(basis_, std::move(co));
    }

private:
    void verify_counit() const {
        for (size_t j = 0; j < basis_.size(); ++j) {
            int count = 0;
            for (auto& [c, i] : coaction_[j])
                if (c == 0) {
                    if (i != int(j)) throw invariant_violation("comodule: u^0 term is not b_j");
                    ++count;
                }
            if (count != 1) throw invariant_violation("comodule: counit fails on " + basis_[j].name);
        }
    }

    // (Delta (x) 1) psi = (1 (x) psi) psi, coefficients in F2
    void verify_coassociativity() const {
        for (size_t j = 0; j < basis_.size(); ++j) {
            std::map<std::tuple<long long, long long, int>, int> lhs, rhs;
            for (auto& [c, i] : coaction_[j])
                for (long long a = 0; a <= c; ++a)
                    if (binom_mod2((unsigned long long)c, (unsigned long long)a))
                        lhs[{a, c - a, i}] ^= 1;
            for (auto& [c, i] : coaction_[j])
                for (auto& [c2, i2] : coaction_[size_t(i)]) rhs[{c, c2, i2}] ^= 1;
            for (auto& [key, v] : rhs) lhs[key] ^= v;
            for (auto& [key, v] : lhs)
                if (v) throw invariant_violation("comodule: coassociativity fails on " + basis_[j].name);
        }
    }

    std::vector<Element> basis_;
    std::vector<std::vector<CoactionTerm>> coaction_;
};

/// The trivial comodule F2 in degree 0.
inline Comodule trivial_comodule() { return Comodule({{"1", 0}}, {{{0, 0}}}); }

/// D_I: all finite subset sums of {2^i : i in I}.
inline std::vector<long long> dyadic_degrees(const std::set<int>& I) {
    std::vector<long long> out{0};
    for (int i : I) {
        if (i < 1 || i > 40) throw error("comodule index out of range");
        size_t n = out.size();
        for (size_t j = 0; j < n; ++j) out.push_back(out[j] + (1LL << i));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The comodule with basis {b_j : j in D_I} and coaction
/// psi(b_j) = sum_i binom(j, i) u^((j-i)/2) (x) b_i.
inline Comodule comodule_MI(const std::set<int>& I) {
    std::vector<long long> degs = dyadic_degrees(I);
    std::vector<Comodule::Element> basis;
    for (long long j : degs) basis.push_back({"b" + std::to_string(j), j});
    std::vector<std::vector<Comodule::CoactionTerm>> co(degs.size());
    for (size_t j = 0; j < degs.size(); ++j)
        for (size_t i = 0; i < degs.size(); ++i)
            if (binom_mod2((unsigned long long)degs[j], (unsigned long long)degs[i]))
                co[j].push_back({(degs[j] - degs[i]) / 2, int(i)});
    return Comodule(std::move(basis), std::move(co));
}

/// A set of positive naturals, possibly cofinite (complement given).
struct IndexSet {
    bool cofinite = false;
    std::set<int> elems;  // members when finite; excluded members when cofinite

    bool contains(int i) const {
        if (i < 1) return false;
        return cofinite ? !elems.count(i) : elems.count(i) > 0;
    }
};

/// Indices i in I with i+1 not in I; each witnesses that the corresponding
/// iterated cone admits no unital ring structure.
inline std::vector<int> nogo_check(const IndexSet& I) {
    std::vector<int> out;
    int scan_to = 1;
    for (int i : I.elems) scan_to = std::max(scan_to, i + 1);
    if (!I.cofinite) {
        for (int i : I.elems)
            if (!I.contains(i + 1)) out.push_back(i);
    } else {
        for (int i = 1; i <= scan_to; ++i)
            if (I.contains(i) && !I.contains(i + 1)) out.push_back(i);
    }
    return out;
}

/// Bigraded Ext dimensions: (cohomological degree s, internal degree t).
using ExtTable = std::map<std::pair<long long, long long>, long long>;

/// Homology of the reduced cobar complex of (F2, C) with coefficients in M,
/// computed degreewise by GF(2) row reduction. Entries with t <= t_bound.
inline ExtTable cobar_ext(const Comodule& M0, const Coalgebra& C, long long t_bound) {
    const Comodule M = C.kind == Coalgebra::Kind::truncated_u ? M0.restrict_to(C) : M0;

    // basis of C^s in internal degree t: [a_1|...|a_s] b with a_p >= 1
    // admitted powers, t = 2*sum + deg(b)
    using Word = std::vector<long long>;  // a_1..a_s, then the element index
    struct Slot {
        std::vector<Word> words;
        std::map<Word, int> index;
    };
    // key: (s, t)
    std::map<std::pair<long long, long long>, Slot> slots;

    long long min_deg = 0;
    for (const auto& e : M.basis()) min_deg = std::min(min_deg, e.degree);
    long long s_max = std::max<long long>(0, (t_bound - min_deg) / 2 + 1);

    // enumerate words recursively per s
    for (long long s = 0; s <= s_max; ++s) {
        Word w(size_t(s) + 1, 0);
        auto rec = [&](auto&& self, long long pos, long long used) -> void {
            if (pos == s) {
                for (size_t b = 0; b < M.size(); ++b) {
                    long long t = 2 * used + M.basis()[b].degree;
                    if (t > t_bound || t < 0) continue;
                    w[size_t(s)] = (long long)b;
                    auto& slot = slots[{s, t}];
                    slot.index[w] = int(slot.words.size());
                    slot.words.push_back(w);
                }
                return;
            }
            for (long long a = 1; 2 * (used + a) <= t_bound - min_deg && C.admits(a); ++a) {
                w[size_t(pos)] = a;
                self(self, pos + 1, used + a);
            }
        };
        rec(rec, 0, 0);
    }

    // differential C^s -> C^(s+1)
    auto differential_row = [&](const Word& w, long long s, const Slot& target) {
        BitVec row(int(target.words.size()));
        auto toggle = [&](const Word& v) {
            auto it = target.index.find(v);
            if (it != target.index.end()) row.flip(it->second);
        };
        // comultiplication splits of each bar entry
        for (long long p = 0; p < s; ++p) {
            long long a = w[size_t(p)];
            for (long long i = 1; i < a; ++i) {
                if (!binom_mod2((unsigned long long)a, (unsigned long long)i)) continue;
                if (!C.admits(i) || !C.admits(a - i)) continue;
                Word v;
                v.reserve(w.size() + 1);
                v.insert(v.end(), w.begin(), w.begin() + p);
                v.push_back(i);
                v.push_back(a - i);
                v.insert(v.end(), w.begin() + p + 1, w.end());
                toggle(v);
            }
        }
        // reduced coaction on the comodule entry
        int b = int(w.back());
        for (auto& [c, i] : M.coaction()[size_t(b)]) {
            if (c == 0) continue;
            Word v(w.begin(), w.end() - 1);
            v.push_back(c);
            v.push_back(i);
            toggle(v);
        }
        return row;
    };

    // rank of d per (s, t), then dim H = dim - rank_out - rank_in
    std::map<std::pair<long long, long long>, long long> rank;
    for (auto& [key, slot] : slots) {
        auto [s, t] = key;
        auto tgt = slots.find({s + 1, t});
        if (tgt == slots.end()) {
            rank[key] = 0;
            continue;
        }
        std::vector<BitVec> rows;
        rows.reserve(slot.words.size());
        for (const auto& w : slot.words) rows.push_back(differential_row(w, s, tgt->second));
        rank[key] = gf2_rank(std::move(rows), int(tgt->second.words.size()));
    }

    ExtTable out;
    for (auto& [key, slot] : slots) {
        auto [s, t] = key;
        long long h = (long long)slot.words.size() - rank[key];
        if (s > 0) {
            auto prev = rank.find({s - 1, t});
            if (prev != rank.end()) h -= prev->second;
        }
        if (h != 0) out[{s, t}] = h;
    }
    return out;
}

}  // namespace milnor
