#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "milnor/chart.hpp"
#include "milnor/comodule.hpp"
#include "milnor/poly_io.hpp"
#include "milnor/quotient.hpp"
#include "milnor/sseq.hpp"
#include "milnor/verify.hpp"

namespace milnor::cli {

inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw error("cannot write " + tmp);
        os << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw error("cannot rename into " + path);
}

namespace detail {

inline Poly parse_target(const std::string& target, int vars) {
    if (target.rfind("xi", 0) == 0 && target.find('*') == std::string::npos &&
        target.find('^') == std::string::npos) {
        int j = std::stoi(target.substr(2));
        int n = vars > 0 ? vars : j + 1;
        return Poly::variable(xi_table(n), "xi" + std::to_string(j));
    }
    if (target.rfind("zeta", 0) == 0) {
        int j = std::stoi(target.substr(4));
        int n = vars > 0 ? vars : j + 1;
        return zeta(j, TruncationSpec::full(n));
    }
    std::ifstream is(target);
    if (is) {
        json j;
        is >> j;
        return poly_from_json(j);
    }
    throw error("q1 target must be xi<j>, zeta<n>, or a polynomial JSON file");
}

inline void emit_dims(const std::map<long long, long long>& dims, const std::string& format,
                      std::ostream& out) {
    if (format == "csv") {
        out << "degree,dim\n";
        for (const auto& [d, n] : dims) out << d << "," << n << "\n";
    } else if (format == "json") {
        json j = json::array();
        for (const auto& [d, n] : dims) j.push_back({d, n});
        out << j.dump() << "\n";
    } else {
        for (const auto& [d, n] : dims) out << d << ": " << n << "\n";
    }
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Returns 0 on success,
/// 1 on verification failure, 2 on usage or resource errors.
inline int run_args(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic calculator for the mod-2 dual Steenrod algebra, its finite quotient "
                 "rings, and their relative Adams charts"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags remain valid after a subcommand
    std::string format = "text";
    app.add_option("--format", format, "output format: text|json|csv|svg")->capture_default_str();
    Limits limits = Limits::from_env();
    app.add_option("--dim-limit", limits.dim_limit, "dimension feasibility cap");
    app.add_option("--degree-limit", limits.degree_limit, "degree feasibility cap");
    app.add_option("--gb-cap", limits.gb_grade_cap, "Groebner intermediate-degree cap (0 = auto)");

    auto* c_zeta = app.add_subcommand("zeta", "conjugate class zeta_n");
    int zn = 1, ztrunc = 0, zvars = 0;
    c_zeta->add_option("n", zn, "index")->required();
    c_zeta->add_option("--truncate", ztrunc, "work in F2[xi1..xik]");
    c_zeta->add_option("--vars", zvars, "variables in the full ring (default n)");

    auto* c_q1 = app.add_subcommand("q1", "Dyer-Lashof operation Q1");
    std::string q1_target;
    int q1_vars = 0;
    c_q1->add_option("target", q1_target, "xi<j> | zeta<n> | polynomial JSON file")->required();
    c_q1->add_option("--vars", q1_vars, "table size (default: smallest that fits)");

    auto* c_gb = app.add_subcommand("groebner", "reduced Groebner basis and membership");
    std::string gens_file, reduce_expr;
    long long std_bound = -1;
    auto* zopt = c_gb->add_option("--zetas", "k m: generators zeta_{m+1}..zeta_{m+k} in F2[xi1..xik]");
    zopt->expected(2);
    c_gb->add_option("--gens", gens_file, "JSON file {vars: [...], polys: [[terms]...]}");
    c_gb->add_option("--reduce", reduce_expr, "report the normal form and certificate of EXPR");
    c_gb->add_option("--standard-monomials", std_bound,
                     "emit the degree,count table of standard monomials up to this degree");

    auto* c_q = app.add_subcommand("quotient", "dimension table of the finite quotient ring");
    int qk = 1, qm = 1, qn = 0;
    c_q->add_option("k", qk)->required();
    c_q->add_option("m", qm)->required();
    c_q->add_option("--n", qn, "tensor with the 2^n split classes");

    auto* c_p = app.add_subcommand("poincare", "Poincare polynomial coefficients");
    int pk = 1, pm = 1;
    c_p->add_option("k", pk)->required();
    c_p->add_option("m", pm)->required();

    auto* c_f = app.add_subcommand("frobenius", "pairing rank report");
    int fk = 1, fm = 1;
    c_f->add_option("k", fk)->required();
    c_f->add_option("m", fm)->required();

    auto* c_s = app.add_subcommand("split", "dimension table of the split module");
    int sk = 1, sm = 1, sn = 0;
    c_s->add_option("k", sk)->required();
    c_s->add_option("m", sm)->required();
    c_s->add_option("n", sn)->required();

    auto* c_com = app.add_subcommand("comodule", "iterated-cone comodule and ring obstructions");
    std::vector<int> com_set;
    c_com->add_option("indices", com_set, "index set I")->required();

    auto* c_ext = app.add_subcommand("ext", "cobar Ext dimension table");
    std::vector<int> ext_set;
    int ext_trunc = 0;
    long long ext_tmax = 20;
    c_ext->add_option("--set", ext_set, "comodule index set (default: trivial comodule)");
    c_ext->add_option("--truncate", ext_trunc, "coalgebra F2[u]/(u^(2^k)) instead of F2[u]");
    c_ext->add_option("--tmax", ext_tmax, "internal degree bound");

    auto* c_a = app.add_subcommand("adams", "run the relative Adams spectral sequence");
    int ak = 1, am = 1, an = 0;
    long long stems = 0;
    if (const char* s = std::getenv("MILNOR_STEMS")) stems = std::atoll(s);
    bool all_pages = false, end_module = false, reconcile = false;
    std::string out_dir;
    c_a->add_option("k", ak)->required();
    c_a->add_option("m", am)->required();
    c_a->add_option("--n", an, "split parameter");
    c_a->add_option("--stems", stems, "stem bound (default: delta + 8, env MILNOR_STEMS)");
    c_a->add_flag("--pages", all_pages, "emit every page, not only the last");
    c_a->add_flag("--end-module", end_module, "endomorphism-module variant (requires m = k)");
    c_a->add_flag("--reconcile", reconcile,
                  "also print the per-degree deficit of the final page against the quotient");
    c_a->add_option("--out", out_dir, "directory for page JSON and SVG files");

    auto* c_chart = app.add_subcommand("chart", "render a stored page JSON to SVG");
    std::string chart_file, chart_out;
    c_chart->add_option("page", chart_file, "page JSON file")->required();
    c_chart->add_option("-o,--output", chart_out, "output SVG path (default stdout)");

    auto* c_v = app.add_subcommand("verify", "run the acceptance suite");
    std::string suite = "all";
    c_v->add_option("--suite", suite, "core|sseq|all")->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("milnor");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_zeta) {
            if (zn < 1) throw error("zeta: need n >= 1");
            TruncationSpec spec = ztrunc > 0 ? TruncationSpec::trunc(ztrunc)
                                             : TruncationSpec::full(zvars > 0 ? zvars : zn);
            Poly z = zeta(zn, spec);
            out << (format == "json" ? poly_to_json(z).dump() : poly_to_string(z)) << "\n";
        } else if (*c_q1) {
            Poly result = q1(detail::parse_target(q1_target, q1_vars));
            out << (format == "json" ? poly_to_json(result).dump() : poly_to_string(result)) << "\n";
        } else if (*c_gb) {
            TablePtr table;
            std::vector<Poly> gens;
            if (zopt->count()) {
                auto km = zopt->as<std::vector<int>>();
                table = xi_table(km[0]);
                for (int i = 1; i <= km[0]; ++i)
                    gens.push_back(zeta(km[1] + i, TruncationSpec::trunc(km[0])));
            } else if (!gens_file.empty()) {
                std::ifstream is(gens_file);
                if (!is) throw error("cannot read " + gens_file);
                json j;
                is >> j;
                table = table_from_json(j.at("vars"));
                for (const auto& terms : j.at("polys")) {
                    std::vector<Monomial> ms;
                    for (const auto& e : terms) ms.push_back(Monomial{e.get<std::vector<Exp>>()});
                    gens.push_back(Poly::from_terms(table, std::move(ms)));
                }
            } else {
                throw error("groebner: need --zetas or --gens");
            }
            Budget budget{limits.gb_grade_cap > 0 ? limits.gb_grade_cap : -1, -1};
            if (!reduce_expr.empty()) {
                Poly p = poly_from_string(table, reduce_expr);
                auto res = reduce_with_cofactors(p, gens, TermOrder{}, budget);
                json j;
                if (std::holds_alternative<CofactorCertificate>(res)) {
                    const auto& cert = std::get<CofactorCertificate>(res);
                    j["member"] = true;
                    j["cofactors"] = json::array();
                    for (const auto& c : cert.cofactors) j["cofactors"].push_back(poly_to_json(c));
                } else {
                    j["member"] = false;
                    j["normal_form"] = poly_to_json(std::get<Poly>(res));
                }
                if (format == "json")
                    out << j.dump() << "\n";
                else if (j["member"].get<bool>())
                    out << "member, certificate verified\n";
                else
                    out << "not a member; normal form " << poly_to_string(std::get<Poly>(res))
                        << "\n";
            } else if (std_bound >= 0) {
                GroebnerBasis gb = buchberger(table, gens, TermOrder{}, budget);
                auto sm = standard_monomials(gb, std_bound);
                if (format == "json") {
                    json j = json::array();
                    for (const auto& [d, v] : sm)
                        if (!v.empty()) j.push_back({d, v.size()});
                    out << j.dump() << "\n";
                } else {
                    out << "degree,count\n";
                    for (const auto& [d, v] : sm)
                        if (!v.empty()) out << d << "," << v.size() << "\n";
                }
            } else {
                GroebnerBasis gb = buchberger(table, gens, TermOrder{}, budget);
                if (format == "json") {
                    json j;
                    j["vars"] = table_to_json(*table);
                    j["basis"] = json::array();
                    for (const auto& b : gb.basis()) j["basis"].push_back(poly_to_json(b)["terms"]);
                    out << j.dump() << "\n";
                } else {
                    for (const auto& b : gb.basis()) out << poly_to_string(b) << "\n";
                }
            }
        } else if (*c_q) {
            auto dims = qn > 0 ? split_dims(qk, qm, qn, limits)
                               : QuotientRing::build(qk, qm, limits).dims();
            detail::emit_dims(dims, format, out);
        } else if (*c_s) {
            detail::emit_dims(split_dims(sk, sm, sn, limits), format, out);
        } else if (*c_p) {
            QuotientRing q = QuotientRing::build(pk, pm, limits);
            IntSeries series = poincare_series(q);
            if (!(series == closed_form_poincare(pk, pm)))
                throw invariant_violation("poincare: closed form disagrees");
            if (format == "json") {
                out << json(series.coeffs()).dump() << "\n";
            } else if (format == "csv") {
                out << "degree,coefficient\n";
                for (size_t i = 0; i < series.coeffs().size(); ++i)
                    out << i << "," << series.coeffs()[i] << "\n";
            } else {
                for (size_t i = 0; i < series.coeffs().size(); ++i) {
                    if (i) out << " + ";
                    if (series.coeffs()[i] != 1 || i == 0) out << series.coeffs()[i];
                    if (i) out << "t^" << i;
                }
                out << "\n";
            }
        } else if (*c_f) {
            QuotientRing q = QuotientRing::build(fk, fm, limits);
            FrobeniusReport rep = frobenius_check(q);
            if (format == "json") {
                json rows = json::array();
                for (const auto& r : rep.rows)
                    rows.push_back({r.t, r.dim_t, r.dim_dual, r.rank, r.nonsingular});
                out << json{{"top_degree", rep.top_degree},
                            {"all_nonsingular", rep.all_nonsingular},
                            {"rows", rows}}
                           .dump()
                    << "\n";
            } else {
                out << "t,dim_t,dim_dual,rank,nonsingular\n";
                for (const auto& r : rep.rows)
                    out << r.t << "," << r.dim_t << "," << r.dim_dual << "," << r.rank << ","
                        << (r.nonsingular ? 1 : 0) << "\n";
                out << (rep.all_nonsingular ? "all pairings nonsingular" : "SINGULAR pairing present")
                    << "\n";
            }
            if (!rep.all_nonsingular) return 1;
        } else if (*c_com) {
            std::set<int> I(com_set.begin(), com_set.end());
            Comodule m = comodule_MI(I);
            auto obstructed = nogo_check(IndexSet{false, I});
            if (format == "json") {
                json j;
                j["basis"] = json::array();
                for (const auto& e : m.basis()) j["basis"].push_back({e.name, e.degree});
                j["coaction"] = json::array();
                for (const auto& terms : m.coaction()) {
                    json row = json::array();
                    for (const auto& [c, i] : terms) row.push_back({c, i});
                    j["coaction"].push_back(row);
                }
                j["ring_obstructions"] = obstructed;
                out << j.dump() << "\n";
            } else {
                for (size_t b = 0; b < m.size(); ++b) {
                    out << "psi(" << m.basis()[b].name << ") =";
                    bool first = true;
                    for (const auto& [c, i] : m.coaction()[b]) {
                        out << (first ? " " : " + ") << "u^" << c << "(x)"
                            << m.basis()[size_t(i)].name;
                        first = false;
                    }
                    out << "\n";
                }
                out << "ring obstructions:";
                for (int i : obstructed) out << " " << i;
                out << "\n";
            }
        } else if (*c_ext) {
            if (ext_trunc < 0) throw error("ext: --truncate must be positive");
            Comodule m = ext_set.empty()
                             ? trivial_comodule()
                             : comodule_MI(std::set<int>(ext_set.begin(), ext_set.end()));
            Coalgebra c = ext_trunc > 0 ? Coalgebra::trunc_u(ext_trunc) : Coalgebra::poly_u();
            ExtTable table = cobar_ext(m, c, ext_tmax);
            if (format == "json") {
                json j = json::array();
                for (const auto& [st, d] : table) j.push_back({st.first, st.second, d});
                out << j.dump() << "\n";
            } else {
                out << "s,t,dim\n";
                for (const auto& [st, d] : table)
                    out << st.first << "," << st.second << "," << d << "\n";
            }
        } else if (*c_a) {
            AdamsRun run;
            if (end_module) {
                if (am != ak) throw error("adams --end-module: requires m = k");
                run = end_module_run(ak, stems);
            } else {
                run = run_adams(ak, am, an, stems);
            }
            std::vector<PageView> views;
            for (size_t i = 0; i < run.pages.size(); ++i) views.push_back(make_view(run, i));
            if (!all_pages) views.erase(views.begin(), views.end() - 1);
            auto to_json_with_extras = [&](const PageView& v) {
                json j = page_to_json(v);
                if (end_module && v.r == run.final_page().r) {
                    json exts = json::array();
                    for (const auto& h : hidden_extensions(ak))
                        exts.push_back({{"multiplier", h.multiplier},
                                        {"source", h.source},
                                        {"target", h.target},
                                        {"degree", h.degree},
                                        {"machine_verified", false}});
                    j["recorded_extensions"] = exts;
                }
                return j;
            };
            if (!out_dir.empty()) {
                for (const auto& v : views) {
                    std::string base = out_dir + "/page_r" + std::to_string(v.r);
                    write_file_atomic(base + ".json", to_json_with_extras(v).dump() + "\n");
                    write_file_atomic(base + ".svg", render_svg(v));
                    out << base << ".json " << base << ".svg\n";
                }
            } else if (format == "svg") {
                out << (all_pages ? render_svg(views) : render_svg(views.back()));
            } else if (format == "json") {
                json j = json::array();
                for (const auto& v : views) j.push_back(to_json_with_extras(v));
                out << (all_pages ? j.dump() : j.back().dump()) << "\n";
            } else {
                for (const auto& v : views) out << render_text(v);
            }
            if (reconcile && !end_module) {
                auto target = an > 0 ? split_dims(ak, am, an, limits)
                                     : QuotientRing::build(ak, am, limits).dims();
                auto deficits = reconcile_with_abutment(run.final_page(), target);
                out << "deficit (page minus abutment), trusted stems only:\n";
                for (const auto& [d, v] : deficits)
                    if (v) out << d << ": " << v << "\n";
                if (reconcile_all_zero(deficits)) out << "all zero\n";
            } else if (reconcile && end_module) {
                // the abutment surface here is self-duality of the dimensions
                const Page& last = run.final_page();
                long long shift = 2 * ((1LL << ak) - 1) * ((1LL << ak) - 1);
                long long hi = last.interior_max_stem();
                auto dims = last.dims_by_stem();
                auto at = [&](long long d) { return dims.count(d) ? dims.at(d) : 0; };
                bool dual = true;
                out << "self-duality deficits about " << shift << ", trusted stems only:\n";
                for (long long d = std::min(last.stem_min, shift - hi); d <= hi; ++d)
                    if (at(d) != at(shift - d)) {
                        out << d << ": " << (at(d) - at(shift - d)) << "\n";
                        dual = false;
                    }
                if (dual) out << "all zero\n";
            }
        } else if (*c_chart) {
            std::ifstream is(chart_file);
            if (!is) throw error("cannot read " + chart_file);
            json j;
            is >> j;
            std::string svg = render_svg(page_from_json(j));
            if (chart_out.empty())
                out << svg;
            else
                write_file_atomic(chart_out, svg);
        } else if (*c_v) {
            return print_suite(run_suite(suite), out);
        }
    } catch (const resource_exhausted& e) {
        err << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const invariant_violation& e) {
        err << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_args(std::move(args), out, err);
}

}  // namespace milnor::cli
