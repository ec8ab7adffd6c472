#pragma once

#include <map>
#include <optional>
#include <vector>

#include "milnor/groebner.hpp"

namespace milnor {

/// A quotient of a free graded-commutative algebra (polynomial and exterior
/// generators, degrees possibly negative) by homogeneous relations, with a
/// degreewise standard-monomial basis.
///
/// Internally the exterior squares are adjoined as relations and everything
/// runs in the free commutative ring under the exponent-count graded order
/// (the topological grading is not a well-order once negative degrees occur).
class PresentedAlgebra {
public:
    TablePtr table;               // public table, exterior parities intact
    std::vector<Poly> relations;  // as given, without the adjoined squares
    std::optional<long long> trusted_degree;  // precision marker: refuse queries above

    static PresentedAlgebra build(TablePtr table, std::vector<Poly> relations,
                                  std::optional<long long> trusted = std::nullopt) {
        PresentedAlgebra a;
        a.table = table;
        a.relations = relations;
        a.trusted_degree = trusted;

        std::vector<Variable> free_vars = table->vars();
        for (auto& v : free_vars) v.parity = Parity::polynomial;
        a.free_table_ = make_table(std::move(free_vars));

        std::vector<Poly> gens;
        for (const auto& r : relations) {
            if (!rebase(r, table).homogeneous_degree())
                throw error("presented algebra: relations must be homogeneous");
            gens.push_back(rebase(r, a.free_table_));
        }
        for (size_t i = 0; i < table->size(); ++i)
            if ((*table)[i].parity == Parity::exterior)
                gens.push_back(Poly::variable(a.free_table_, int(i)).pow(2));
        a.gb_ = buchberger_impl(a.free_table_, std::move(gens),
                                TermOrder{TermOrder::Grading::exponent_count}, Budget{}, false,
                                /*allow_exterior=*/true);
        return a;
    }

    const TablePtr& free_table() const { return free_table_; }
    const GroebnerBasis& groebner() const { return gb_; }

    /// Normal form in the quotient (input over either table).
    Poly reduce(const Poly& p) const { return normal_form(rebase(p, free_table_), gb_); }

    /// Standard monomials with topological degree in [lo, hi].
    std::vector<Monomial> basis_in_range(long long lo, long long hi) const {
        check_trusted(hi);
        const VariableTable& t = *free_table_;
        // negative-degree variables are exterior in the public table, so each
        // contributes at most |degree| of slack to the positive side
        long long slack = 0;
        for (size_t i = 0; i < t.size(); ++i)
            if ((*table)[i].degree < 0) {
                if ((*table)[i].parity != Parity::exterior)
                    throw error("presented algebra: negative-degree variables must be exterior");
                slack -= (*table)[i].degree;
            }
        std::vector<Monomial> out;
        Monomial m = unit_monomial(t);
        enumerate(t, hi + slack, 0, m, 0, [&](const Monomial& cand) {
            long long d = degree_of(t, cand);
            if (d < lo || d > hi) return;
            for (const auto& l : gb_.leading_terms())
                if (divides(l, cand)) return;
            out.push_back(cand);
        });
        std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
            long long da = degree_of(t, a), db = degree_of(t, b);
            if (da != db) return da < db;
            return canon_cmp(t, a, b) > 0;
        });
        return out;
    }

    std::vector<Monomial> basis_in_degree(long long d) const { return basis_in_range(d, d); }

    std::map<long long, long long> dims(long long lo, long long hi) const {
        std::map<long long, long long> out;
        for (const auto& mono : basis_in_range(lo, hi)) out[degree_of(*free_table_, mono)] += 1;
        return out;
    }

private:
    void check_trusted(long long degree) const {
        if (trusted_degree && degree > *trusted_degree)
            throw error("presented algebra: query above the trusted degree " +
                        std::to_string(*trusted_degree) +
                        " (relations are known only modulo higher terms)");
    }

    template <typename Fn>
    void enumerate(const VariableTable& t, long long budget, size_t idx, Monomial& m,
                   long long used, Fn&& fn) const {
        if (idx == t.size()) {
            fn(m);
            return;
        }
        long long w = (*table)[idx].degree;
        long long cap;
        if ((*table)[idx].parity == Parity::exterior)
            cap = 1;
        else if (w > 0)
            cap = (budget - used) / w;
        else
            throw error("presented algebra: non-exterior variable with non-positive degree");
        for (Exp e = 0; e <= cap; ++e) {
            m.exps[idx] = e;
            enumerate(t, budget, idx + 1, m, used + (w > 0 ? e * w : 0), fn);
        }
        m.exps[idx] = 0;
    }

    TablePtr free_table_;
    GroebnerBasis gb_;
};

}  // namespace milnor
