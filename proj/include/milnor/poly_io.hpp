#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "milnor/poly.hpp"

namespace milnor {

using json = nlohmann::json;

inline json table_to_json(const VariableTable& t) {
    json vars = json::array();
    for (const auto& v : t.vars())
        vars.push_back({v.name, v.degree, v.parity == Parity::exterior ? "ext" : "poly", v.weight});
    return vars;
}

inline TablePtr table_from_json(const json& j) {
    std::vector<Variable> vars;
    for (const auto& e : j) {
        Variable v;
        v.name = e.at(0).get<std::string>();
        v.degree = e.at(1).get<long long>();
        std::string par = e.at(2).get<std::string>();
        if (par != "poly" && par != "ext") throw error("bad parity tag: " + par);
        v.parity = par == "ext" ? Parity::exterior : Parity::polynomial;
        v.weight = e.at(3).get<int>();
        vars.push_back(std::move(v));
    }
    return make_table(std::move(vars));
}

/// {"vars": [[name, degree, parity, weight], ...], "terms": [[e...], ...]}
/// with terms in the canonical order.
inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& m : p.terms()) terms.push_back(m.exps);
    return json{{"vars", table_to_json(*p.table())}, {"terms", terms}};
}

inline Poly poly_from_json(const json& j) {
    TablePtr t = table_from_json(j.at("vars"));
    std::vector<Monomial> terms;
    for (const auto& e : j.at("terms")) {
        Monomial m;
        m.exps = e.get<std::vector<Exp>>();
        if (m.exps.size() != t->size()) throw error("term length does not match table");
        terms.push_back(std::move(m));
    }
    return Poly::from_terms(std::move(t), std::move(terms));
}

inline std::string monomial_to_string(const VariableTable& t, const Monomial& m) {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < t.size(); ++i) {
        if (!m.exps[i]) continue;
        if (!first) os << "*";
        os << t[i].name;
        if (m.exps[i] != 1) os << "^" << m.exps[i];
        first = false;
    }
    return os.str();
}

inline std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& m : p.terms()) {
        if (!first) os << " + ";
        os << monomial_to_string(*p.table(), m);
        first = false;
    }
    return os.str();
}

/// Parses the monomial syntax emitted above ("xi1^3*xi2", "1").
inline Poly poly_from_string(TablePtr t, const std::string& s) {
    std::vector<Monomial> terms;
    std::istringstream is(s);
    std::string term;
    auto flush = [&](const std::string& w) {
        if (w.empty() || w == "+" || w == "0") return;
        Monomial m = unit_monomial(*t);
        if (w != "1") {
            std::istringstream fs(w);
            std::string factor;
            while (std::getline(fs, factor, '*')) {
                auto caret = factor.find('^');
                std::string name = factor.substr(0, caret);
                Exp e = 1;
                if (caret != std::string::npos) e = Exp(std::stol(factor.substr(caret + 1)));
                int idx = t->index_of(name);
                if (idx < 0) throw error("unknown variable: " + name);
                m.exps[idx] = checked_exp_add(m.exps[idx], e);
            }
        }
        terms.push_back(std::move(m));
    };
    while (is >> term) flush(term);
    return Poly::from_terms(std::move(t), std::move(terms));
}

}  // namespace milnor
