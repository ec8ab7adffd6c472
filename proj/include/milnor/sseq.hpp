#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "milnor/gf2.hpp"
#include "milnor/presented.hpp"
#include "milnor/quotient.hpp"

namespace milnor {

struct BiDegree {
    long long stem = 0;        // t - s, the topological degree
    long long filtration = 0;  // s, the Adams weight

    auto operator<=>(const BiDegree&) const = default;
};

/// One differential datum: d_r(source) = target, extended by linearity and
/// the module Leibniz rule over multiplier classes that are still cycles.
struct DifferentialAssignment {
    int r = 0;
    Poly source;  // single-monomial expression over the page table
    Poly target;
};

/// A bigraded page of the spectral sequence. Every class is a subquotient
/// vector over the fixed E2 standard-monomial basis of its bidegree; cells
/// keep the cycle space Z and boundary space B accumulated so far.
class Page {
public:
    struct Cell {
        std::vector<Monomial> basis;  // E2 standard monomials, canonical order
        std::map<std::vector<Exp>, int> index;
        RowSpace Z, B;
    };
    struct Arrow {
        int r = 0;
        BiDegree src, tgt;
        long long rank = 0;
    };

    int r = 2;
    long long stem_min = 0, stem_bound = 0;
    std::shared_ptr<const PresentedAlgebra> alg;
    std::vector<int> transient;  // variable indices with binary-digit Leibniz bookkeeping
    std::map<BiDegree, Cell> cells;
    std::vector<Arrow> arrows;

    long long interior_max_stem() const { return stem_bound - r; }

    long long dim_at(const BiDegree& bd) const {
        auto it = cells.find(bd);
        return it == cells.end() ? 0 : it->second.Z.rank() - it->second.B.rank();
    }

    std::map<BiDegree, long long> dims() const {
        std::map<BiDegree, long long> out;
        for (const auto& [bd, c] : cells) {
            long long d = c.Z.rank() - c.B.rank();
            if (d) out[bd] = d;
        }
        return out;
    }

    std::map<long long, long long> dims_by_stem() const {
        std::map<long long, long long> out;
        for (const auto& [bd, d] : dims()) out[bd.stem] += d;
        return out;
    }

    long long total_dim() const {
        long long s = 0;
        for (const auto& [bd, d] : dims()) s += d;
        return s;
    }

    /// Class of a reduced, bi-homogeneous polynomial: its bidegree and
    /// coordinate vector. Zero polynomials have no bidegree.
    std::optional<std::pair<BiDegree, BitVec>> vector_of(const Poly& reduced) const {
        if (reduced.is_zero()) return std::nullopt;
        const VariableTable& t = *alg->free_table();
        BiDegree bd{degree_of(t, reduced.terms()[0]), weight_of(t, reduced.terms()[0])};
        auto it = cells.find(bd);
        if (it == cells.end()) throw invariant_violation("page: class outside the enumerated window");
        BitVec v(int(it->second.basis.size()));
        for (const auto& term : reduced.terms()) {
            if (BiDegree{degree_of(t, term), weight_of(t, term)} != bd)
                throw invariant_violation("page: class is not bi-homogeneous");
            v.flip(it->second.index.at(term.exps));
        }
        return std::make_pair(bd, std::move(v));
    }

    bool class_alive(const Poly& expr) const {
        Poly nf = alg->reduce(expr);
        auto vk = vector_of(nf);
        if (!vk) return false;
        const Cell& c = cells.at(vk->first);
        return c.Z.contains(vk->second) && !c.B.contains(vk->second);
    }
};

/// The starting page of a presented bigraded algebra: one cell per bidegree
/// holding the standard monomials with stems in [stem_min, stem_bound].
inline Page presented_page(std::shared_ptr<const PresentedAlgebra> alg, std::vector<int> transient,
                           long long stem_min, long long stem_bound) {
    Page p;
    p.r = 2;
    p.stem_min = stem_min;
    p.stem_bound = stem_bound;
    p.alg = std::move(alg);
    p.transient = std::move(transient);
    const VariableTable& t = *p.alg->free_table();
    for (const auto& mono : p.alg->basis_in_range(stem_min, stem_bound)) {
        BiDegree bd{degree_of(t, mono), weight_of(t, mono)};
        p.cells[bd].basis.push_back(mono);
    }
    for (auto& [bd, cell] : p.cells) {
        int n = int(cell.basis.size());
        cell.Z = RowSpace(n);
        cell.B = RowSpace(n);
        for (int i = 0; i < n; ++i) {
            cell.index[cell.basis[size_t(i)].exps] = i;
            BitVec v(n);
            v.set(i);
            cell.Z.insert(std::move(v));
        }
    }
    return p;
}

/// Variables of the quotient-run starting page: xi1..xik plus e_{2^(m+1)}.
inline TablePtr e2_table(int k, int m) {
    std::vector<Variable> vars = xi_table(k)->vars();
    long long edeg = 1LL << (m + 1);
    vars.push_back({"e" + std::to_string(edeg), edeg, Parity::polynomial, 0});
    return make_table(std::move(vars));
}

/// E2 = F2[xi1..xik] (x) F2[e_{2^(m+1)}] / e^(2^(n+k)), with e in bidegree
/// (2^(m+1), 0) and xi_i in (2^i - 1, 1). Requires m >= k >= 1.
inline Page e2_page(int k, int m, int n, long long stem_bound = 0) {
    if (k < 1) throw error("e2_page: need k >= 1");
    if (m < k)
        throw error("e2_page: need m >= k (smaller m reduces to the other order of quotients)");
    if (n < 0) throw error("e2_page: need n >= 0");
    if (stem_bound <= 0) stem_bound = delta_degree(k, m, n) + 8;
    TablePtr table = e2_table(k, m);
    Poly ecap = Poly::variable(table, int(table->size()) - 1).pow(1LL << (n + k));
    auto alg = std::make_shared<PresentedAlgebra>(PresentedAlgebra::build(table, {ecap}));
    return presented_page(std::move(alg), {int(table->size()) - 1}, 0, stem_bound);
}

/// The scheduled differentials of the quotient ring run: for i = 1..k the
/// Adams-leading term of zeta_{m+i} in the truncation gives
/// d_r(e^(2^(i-1))) with r its Adams weight. Rejects m < k and (via the
/// leading-term closed form) any case where the leading part is not a
/// single monomial.
inline std::vector<DifferentialAssignment> differential_schedule_on(const TablePtr& table, int k,
                                                                    int m) {
    if (k < 1 || m < k) throw error("differential_schedule: need m >= k >= 1 (m = 0 changes the homology)");
    int e_idx = -1;
    for (size_t i = 0; i < table->size(); ++i)
        if ((*table)[i].name[0] == 'e') e_idx = int(i);
    if (e_idx < 0) throw error("differential_schedule: table has no e generator");
    std::vector<DifferentialAssignment> out;
    for (int i = 1; i <= k; ++i) {
        Poly lead = adams_leading_part(zeta(m + i, TruncationSpec::trunc(k)));
        if (lead.term_count() != 1)
            throw invariant_violation("differential_schedule: leading part is not a single monomial");
        if (!(lead.terms()[0] == zeta_leading_term(m + i, k)))
            throw invariant_violation("differential_schedule: closed form disagrees with recursion");
        long long r = weight_of(*xi_table(k), lead.terms()[0]);
        DifferentialAssignment a;
        a.r = int(r);
        a.source = Poly::variable(table, e_idx).pow(1LL << (i - 1));
        a.target = rebase(lead, table);
        out.push_back(std::move(a));
    }
    return out;
}

inline std::vector<DifferentialAssignment> differential_schedule(int k, int m) {
    return differential_schedule_on(e2_table(k, m), k, m);
}

namespace detail {

struct PairSpace {
    // rows [v | w] with unique v-pivots; D(v) = w on the span of the v parts
    std::vector<std::pair<BitVec, BitVec>> rows;
    std::vector<int> pivots;

    // returns false when a combination with zero source and nonzero target
    // appears (the Leibniz extension would be ill-defined)
    bool add(BitVec v, BitVec w) {
        for (size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) {
                v ^= rows[i].first;
                w ^= rows[i].second;
            }
        if (!v.any()) return !w.any();
        int p = v.lowest();
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].first.get(p)) {
                rows[i].first ^= v;
                rows[i].second ^= w;
            }
        size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < p) ++pos;
        rows.insert(rows.begin() + long(pos), {std::move(v), std::move(w)});
        pivots.insert(pivots.begin() + long(pos), p);
        return true;
    }

    // image of a vector under the extension-by-zero of D
    BitVec apply(BitVec v, int target_cols) const {
        BitVec img(target_cols);
        for (size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) {
                v ^= rows[i].first;
                img ^= rows[i].second;
            }
        return img;
    }
};

}  // namespace detail

/// Applies one batch of d_r assignments (all with the same r >= page.r;
/// pages between scheduled indices pass through unchanged) and returns the
/// page at index r + 1. The Leibniz extension ranges over multiplier
/// monomials that are alive on the page and whose transient-variable
/// exponents are binary-disjoint from the source's.
inline Page run_differential(const Page& page, const std::vector<DifferentialAssignment>& batch) {
    if (batch.empty()) throw error("run_differential: empty batch");
    int r = batch[0].r;
    for (const auto& a : batch)
        if (a.r != r) throw error("run_differential: mixed page indices in one batch");
    if (r < page.r) throw error("run_differential: page is already past index " + std::to_string(r));

    const PresentedAlgebra& alg = *page.alg;
    const VariableTable& ft = *alg.free_table();

    // multipliers: alive standard monomials, cached per cell
    struct Mult {
        Monomial mono;
        BiDegree bd;
    };
    std::vector<Mult> multipliers;
    for (const auto& [bd, cell] : page.cells)
        for (size_t i = 0; i < cell.basis.size(); ++i) {
            BitVec v(int(cell.basis.size()));
            v.set(int(i));
            if (cell.Z.contains(v) && !cell.B.contains(v)) multipliers.push_back({cell.basis[i], bd});
        }

    std::map<BiDegree, detail::PairSpace> maps;  // keyed by source bidegree
    std::map<BiDegree, std::vector<BitVec>> images;  // new boundaries at target bidegree

    for (const auto& a : batch) {
        if (a.source.term_count() != 1)
            throw error("run_differential: source expression must be a single monomial");
        Poly src_free = rebase(a.source, alg.free_table());
        Poly tgt_free = rebase(a.target, alg.free_table());
        const Monomial& src_mono = src_free.terms()[0];

        Poly src_nf = alg.reduce(src_free);
        Poly tgt_nf = alg.reduce(tgt_free);
        if (!src_nf.is_zero() && !tgt_nf.is_zero()) {
            auto sv = page.vector_of(src_nf), tv = page.vector_of(tgt_nf);
            if (tv->first.stem != sv->first.stem - 1 || tv->first.filtration != sv->first.filtration + r)
                throw error("run_differential: target bidegree is not (stem-1, s+r)");
        }

        for (const auto& mult : multipliers) {
            bool compatible = true;
            for (int v : page.transient)
                if (mult.mono.exps[size_t(v)] & src_mono.exps[size_t(v)]) compatible = false;
            if (!compatible) continue;
            long long prod_stem = mult.bd.stem + degree_of(ft, src_mono);
            if (prod_stem > page.stem_bound || prod_stem - 1 < page.stem_min) continue;

            Poly mp = Poly::monomial(alg.free_table(), mult.mono);
            Poly v_nf = alg.reduce(mp * src_free);
            Poly w_nf = alg.reduce(mp * tgt_free);

            auto vk = page.vector_of(v_nf);
            std::optional<std::pair<BiDegree, BitVec>> wk;
            if (!w_nf.is_zero()) {
                long long wstem = degree_of(ft, w_nf.terms()[0]);
                if (wstem >= page.stem_min && wstem <= page.stem_bound) wk = page.vector_of(w_nf);
            }

            if (!vk) {
                // source class is zero; the extension demands a zero target
                if (wk) {
                    const Page::Cell& tc = page.cells.at(wk->first);
                    if (!tc.B.contains(wk->second))
                        throw error("run_differential: inconsistent assignment (zero source, nonzero target)");
                }
                continue;
            }
            const Page::Cell& sc = page.cells.at(vk->first);
            if (!sc.Z.contains(vk->second))
                throw error("run_differential: source is not a cycle of the earlier differentials");
            BitVec v_red = sc.B.reduce(vk->second);

            BiDegree tbd{vk->first.stem - 1, vk->first.filtration + r};
            BitVec w_red;
            if (wk) {
                if (wk->first != tbd) throw error("run_differential: target lands in the wrong bidegree");
                const Page::Cell& tc = page.cells.at(tbd);
                if (!tc.Z.contains(wk->second))
                    throw error("run_differential: target is not a cycle of the earlier differentials");
                w_red = tc.B.reduce(wk->second);
            } else {
                auto tcell = page.cells.find(tbd);
                w_red = BitVec(tcell == page.cells.end() ? 0 : int(tcell->second.basis.size()));
            }

            if (!v_red.any()) {
                if (w_red.any())
                    throw error("run_differential: inconsistent assignment (zero source, nonzero target)");
                continue;
            }
            if (!maps[vk->first].add(v_red, w_red))
                throw error("run_differential: Leibniz extension is ill-defined on the page");
        }
    }

    // collect images (new boundaries) per target bidegree
    for (auto& [bd, ps] : maps) {
        BiDegree tbd{bd.stem - 1, bd.filtration + r};
        for (auto& row : ps.rows)
            if (row.second.any()) images[tbd].push_back(row.second);
    }

    // d_r of every target must die: check im subset ker before rebuilding
    for (auto& [tbd, vecs] : images) {
        auto it = maps.find(tbd);
        if (it == maps.end()) continue;
        BiDegree t2{tbd.stem - 1, tbd.filtration + r};
        auto t2cell = page.cells.find(t2);
        int cols = t2cell == page.cells.end() ? 0 : int(t2cell->second.basis.size());
        for (auto& w : vecs) {
            BitVec dd = it->second.apply(page.cells.at(tbd).B.reduce(w), cols);
            if (t2cell != page.cells.end()) dd = t2cell->second.B.reduce(dd);
            if (dd.any()) throw error("run_differential: d_r o d_r is nonzero");
        }
    }

    Page next;
    next.r = r + 1;
    next.stem_min = page.stem_min;
    next.stem_bound = page.stem_bound;
    next.alg = page.alg;
    next.transient = page.transient;
    next.arrows = page.arrows;

    for (const auto& [bd, cell] : page.cells) {
        Page::Cell nc;
        nc.basis = cell.basis;
        nc.index = cell.index;
        int n = int(nc.basis.size());
        nc.B = cell.B;
        BiDegree tbd{bd.stem - 1, bd.filtration + r};

        auto img = images.find(bd);
        if (img != images.end())
            for (const auto& w : img->second) nc.B.insert(BitVec(w));

        auto mp = maps.find(bd);
        if (mp == maps.end()) {
            nc.Z = cell.Z;
        } else {
            // kernel of D on Z/B, with D extended by zero off the pair span.
            // Eliminate rows [image | rep]: a row whose pivot sits past the
            // image columns carries a kernel vector in its tail.
            nc.Z = cell.B;
            std::vector<BitVec> reps;
            for (const auto& zrow : cell.Z.rows()) {
                BitVec red = cell.B.reduce(zrow);
                if (red.any()) reps.push_back(std::move(red));
            }
            auto tcell = page.cells.find(tbd);
            int tcols = tcell == page.cells.end() ? 0 : int(tcell->second.basis.size());
            RowSpace elim(tcols + n);
            for (const auto& rep : reps) {
                BitVec img_v = mp->second.apply(BitVec(rep), tcols);
                if (tcell != page.cells.end()) img_v = tcell->second.B.reduce(img_v);
                BitVec rowv(tcols + n);
                for (int c = 0; c < tcols; ++c)
                    if (img_v.get(c)) rowv.set(c);
                for (int c = 0; c < n; ++c)
                    if (rep.get(c)) rowv.set(tcols + c);
                elim.insert(std::move(rowv));
            }
            for (const auto& row : elim.rows()) {
                if (row.lowest() < tcols) continue;  // nonzero image part
                BitVec vec(n);
                for (int c = 0; c < n; ++c)
                    if (row.get(tcols + c)) vec.set(c);
                if (vec.any()) nc.Z.insert(std::move(vec));
            }
        }
        next.cells[bd] = std::move(nc);

        if (mp != maps.end()) {
            long long rk = 0;
            RowSpace imspace(page.cells.count(tbd) ? int(page.cells.at(tbd).basis.size()) : 0);
            for (auto& row : mp->second.rows)
                if (row.second.any() && imspace.insert(BitVec(row.second))) ++rk;
            if (rk) next.arrows.push_back({r, bd, tbd, rk});
        }
    }

    // bookkeeping: dim E_{r+1} = dim E_r - rank(out) - rank(in) per bidegree
    for (const auto& [bd, cell] : next.cells) {
        long long out_rank = 0, in_rank = 0;
        for (const auto& a : next.arrows) {
            if (a.r != r) continue;
            if (a.src == bd) out_rank += a.rank;
            if (a.tgt == bd) in_rank += a.rank;
        }
        if (next.dim_at(bd) != page.dim_at(bd) - out_rank - in_rank)
            throw invariant_violation("run_differential: dimension bookkeeping failed");
    }
    return next;
}

/// Page dimension minus target dimension per total degree over the trusted
/// interior; negative deficits abort (they indicate a wrong differential).
inline std::map<long long, long long> reconcile_with_abutment(
    const Page& page, const std::map<long long, long long>& target) {
    std::map<long long, long long> out;
    long long hi = page.interior_max_stem();
    auto page_dims = page.dims_by_stem();
    for (long long d = page.stem_min; d <= hi; ++d) {
        long long pd = page_dims.count(d) ? page_dims.at(d) : 0;
        long long td = target.count(d) ? target.at(d) : 0;
        long long deficit = pd - td;
        if (deficit < 0)
            throw error("reconcile: page is smaller than the abutment in degree " +
                        std::to_string(d) + " (a differential overshot)");
        out[d] = deficit;
    }
    return out;
}

inline bool reconcile_all_zero(const std::map<long long, long long>& deficits) {
    for (const auto& [d, v] : deficits)
        if (v) return false;
    return true;
}

/// Deficit-driven inputs beyond the leading-term schedule (accepted as
/// input, not discovered): the d15 family closing the width-2 quotient run.
inline std::vector<DifferentialAssignment> extra_differentials(const TablePtr& table, int k, int m) {
    std::vector<DifferentialAssignment> out;
    if (k == 2 && m == 2) {
        DifferentialAssignment a;
        a.r = 15;
        a.source = Poly::variable(table, "xi1") * Poly::variable(table, "e8").pow(2);
        a.target = Poly::variable(table, "xi1").pow(16);
        out.push_back(std::move(a));
    }
    return out;
}

struct AdamsRun {
    std::vector<Page> pages;  // E2 first, then the page after each batch

    const Page& final_page() const { return pages.back(); }
};

/// The full quotient-ring run: scheduled differentials plus the recorded
/// deficit-driven extras, batched by ascending page index.
inline AdamsRun run_adams(int k, int m, int n = 0, long long stem_bound = 0,
                          bool with_extras = true) {
    AdamsRun run;
    run.pages.push_back(e2_page(k, m, n, stem_bound));
    const TablePtr& table = run.pages[0].alg->table;
    auto schedule = differential_schedule_on(table, k, m);
    if (with_extras)
        for (auto& a : extra_differentials(table, k, m)) schedule.push_back(std::move(a));
    std::stable_sort(schedule.begin(), schedule.end(),
                     [](const DifferentialAssignment& a, const DifferentialAssignment& b) {
                         return a.r < b.r;
                     });
    for (size_t i = 0; i < schedule.size();) {
        size_t j = i;
        std::vector<DifferentialAssignment> batch;
        while (j < schedule.size() && schedule[j].r == schedule[i].r) batch.push_back(schedule[j++]);
        run.pages.push_back(run_differential(run.pages.back(), batch));
        i = j;
    }
    return run;
}

/// Dimensionwise tensor-factorization check of the (k,m,n) run against the
/// (k,m,0) run: E_r(n) = E_r(0) (x) F2[e_{2^(m+k+1)}]/e^(2^n) in the shared
/// interior, with e^(2^k) a permanent cycle.
inline bool page_factorization_check(int k, int m, int n, long long stem_bound = 0) {
    if (n < 0) throw error("page_factorization_check: need n >= 0");
    if (stem_bound <= 0) stem_bound = delta_degree(k, m, n) + 8;
    AdamsRun base = run_adams(k, m, 0, stem_bound);
    if (n == 0) return true;
    AdamsRun split = run_adams(k, m, n, stem_bound);
    long long shift = 1LL << (m + k + 1);

    for (size_t p = 0; p < split.pages.size(); ++p) {
        const Page& pn = split.pages[p];
        const Page& p0 = base.pages[p];
        long long hi = std::min(pn.interior_max_stem(), p0.interior_max_stem());
        auto dn = pn.dims();
        auto d0 = p0.dims();
        std::map<BiDegree, long long> expect;
        for (const auto& [bd, d] : d0)
            for (long long j = 0; j < (1LL << n); ++j)
                if (bd.stem + j * shift <= hi) expect[{bd.stem + j * shift, bd.filtration}] += d;
        for (const auto& [bd, d] : expect) {
            long long actual = dn.count(bd) ? dn.at(bd) : 0;
            if (actual != d) return false;
        }
        for (const auto& [bd, d] : dn)
            if (bd.stem <= hi && !expect.count(bd)) return false;
    }
    // e^(2^k) is a permanent cycle on the final split page
    const Page& last = split.pages.back();
    int e_idx = int(last.alg->table->size()) - 1;
    Poly perm = Poly::variable(last.alg->table, e_idx).pow(1LL << k);
    return last.class_alive(perm);
}

/// Multiplicative extensions recorded with the endomorphism-module runs.
/// These are documented expected data, not machine-verified.
struct HiddenExtension {
    std::string multiplier, source, target;
    long long degree = 0;  // total degree of the target
};

inline std::vector<HiddenExtension> hidden_extensions(int k) {
    if (k == 2)
        return {
            {"xi1", "e8^2*beta2", "xi2^3*e8*beta2", 15},
            {"xi1", "xi2*e8^2*beta2", "xi2^4*e8*beta2", 18},
        };
    if (k == 3)
        return {
            {"xi1", "e16^2*beta2", "xi3^3*e16*beta2*beta4", 31},
            {"xi1", "xi3*e16^2*beta2", "xi3^4*e16*beta2*beta4", 38},
            {"xi1", "e16^4*beta4", "xi3^7*e16*beta4", 61},
            {"xi1", "xi3*e16^4*beta4", "xi3^8*e16*beta4", 68},
            {"xi1", "e16^6*beta2*beta4", "xi3^7*e16^3*beta2*beta4", 91},
            {"xi1", "xi3*e16^6*beta2*beta4", "xi3^8*e16^3*beta2*beta4", 98},
            {"xi2", "e16^4*beta2*beta4", "xi3^7*e16*beta4", 61},
            {"xi2", "xi3*e16^4*beta2*beta4", "xi3^8*e16*beta4", 68},
            {"xi2", "e16^4*beta4", "xi3^5*e16^2*beta4", 63},
            {"xi2", "xi3*e16^4*beta4", "xi3^6*e16^2*beta4", 70},
            {"xi2", "xi3^2*e16^4*beta4", "xi3^7*e16^2*beta4", 77},
            {"xi2", "xi3^3*e16^4*beta4", "xi3^8*e16^2*beta4", 84},
            {"xi2", "e16^5*beta2*beta4", "xi3^5*e16^3*beta2*beta4", 77},
            {"xi2", "xi3*e16^5*beta2*beta4", "xi3^6*e16^3*beta2*beta4", 84},
            {"xi2", "xi3^2*e16^5*beta2*beta4", "xi3^7*e16^3*beta2*beta4", 91},
            {"xi2", "xi3^3*e16^5*beta2*beta4", "xi3^8*e16^3*beta2*beta4", 98},
            {"xi2", "e16^6*beta2*beta4", "xi3^7*e16^3*beta4", 93},
            {"xi2", "xi3*e16^6*beta2*beta4", "xi3^8*e16^3*beta4", 100},
        };
    return {};
}

/// E2 of the endomorphism-module run for width k: F2[xi1..xik] (x)
/// E(beta2, ..., beta_{2^(k-1)}) / (xi_j + xi_{j+1} beta_{2^j}) (x)
/// F2[e_{2^(k+1)}]/e^(2^k). The duality shift is 2(2^k - 1)^2.
inline Page end_module_page(int k, long long stem_bound) {
    if (k < 2) throw error("end_module_page: need k >= 2");
    std::vector<Variable> vars = xi_table(k)->vars();
    long long stem_min = 0;
    for (int j = 1; j <= k - 1; ++j) {
        long long d = 1LL << j;
        vars.push_back({"beta" + std::to_string(d), -d, Parity::exterior, 0});
        stem_min -= d;
    }
    long long edeg = 1LL << (k + 1);
    vars.push_back({"e" + std::to_string(edeg), edeg, Parity::polynomial, 0});
    TablePtr table = make_table(std::move(vars));

    std::vector<Poly> rels;
    for (int j = 1; j <= k - 1; ++j) {
        Poly beta = Poly::variable(table, "beta" + std::to_string(1LL << j));
        rels.push_back(Poly::variable(table, "xi" + std::to_string(j)) +
                       Poly::variable(table, "xi" + std::to_string(j + 1)) * beta);
        rels.push_back(Poly::variable(table, "xi" + std::to_string(j)) * beta);
    }
    rels.push_back(Poly::variable(table, int(table->size()) - 1).pow(1LL << k));
    auto alg = std::make_shared<PresentedAlgebra>(PresentedAlgebra::build(table, rels));
    return presented_page(std::move(alg), {int(table->size()) - 1}, stem_min, stem_bound);
}

/// Full endomorphism-module run: the (k,k) leading-term schedule base-changed
/// through the presentation, plus the d15 family for k = 2.
inline AdamsRun end_module_run(int k, long long stem_bound = 0) {
    if (stem_bound <= 0) stem_bound = 2 * ((1LL << k) - 1) * ((1LL << k) - 1) + 8;
    AdamsRun run;
    run.pages.push_back(end_module_page(k, stem_bound));
    const TablePtr& table = run.pages[0].alg->table;
    auto schedule = differential_schedule_on(table, k, k);
    for (auto& a : extra_differentials(table, k, k)) schedule.push_back(std::move(a));
    std::stable_sort(schedule.begin(), schedule.end(),
                     [](const DifferentialAssignment& a, const DifferentialAssignment& b) {
                         return a.r < b.r;
                     });
    for (size_t i = 0; i < schedule.size();) {
        size_t j = i;
        std::vector<DifferentialAssignment> batch;
        while (j < schedule.size() && schedule[j].r == schedule[i].r) batch.push_back(schedule[j++]);
        run.pages.push_back(run_differential(run.pages.back(), batch));
        i = j;
    }
    return run;
}

/// dim_d = dim_{shift-d} over [lo, hi] on the trusted interior.
inline bool palindromic_dims(const Page& page, long long shift, long long lo, long long hi) {
    if (hi > page.interior_max_stem())
        throw error("palindromic_dims: range exceeds the trusted interior");
    auto dims = page.dims_by_stem();
    auto at = [&](long long d) { return dims.count(d) ? dims.at(d) : 0; };
    for (long long d = lo; d <= hi; ++d)
        if (at(d) != at(shift - d)) return false;
    return true;
}

}  // namespace milnor
