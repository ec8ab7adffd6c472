#pragma once

#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "milnor/sseq.hpp"

namespace milnor {

/// Renderable snapshot of one page: dimensions per bidegree plus the
/// differentials leaving it.
struct PageView {
    int r = 2;
    long long stem_min = 0, stem_bound = 0, interior_max = 0;
    std::map<BiDegree, long long> dims;
    std::vector<Page::Arrow> arrows;
};

inline PageView make_view(const Page& page) {
    PageView v;
    v.r = page.r;
    v.stem_min = page.stem_min;
    v.stem_bound = page.stem_bound;
    v.interior_max = page.interior_max_stem();
    v.dims = page.dims();
    return v;
}

/// View of run.pages[i] together with the differentials applied to it.
inline PageView make_view(const AdamsRun& run, size_t i) {
    PageView v = make_view(run.pages.at(i));
    if (i + 1 < run.pages.size()) {
        int applied_r = run.pages[i + 1].r - 1;  // the batch that produced the next page
        for (const auto& a : run.pages[i + 1].arrows)
            if (a.r == applied_r) v.arrows.push_back(a);
    }
    return v;
}

/// {r, entries: [[stem, filtration, dim]], differentials: [[src, tgt]]}
/// with src/tgt as [stem, filtration], one pair per rank unit.
inline nlohmann::json page_to_json(const PageView& v) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [bd, d] : v.dims) entries.push_back({bd.stem, bd.filtration, d});
    nlohmann::json diffs = nlohmann::json::array();
    for (const auto& a : v.arrows)
        for (long long i = 0; i < a.rank; ++i)
            diffs.push_back({{a.src.stem, a.src.filtration}, {a.tgt.stem, a.tgt.filtration}});
    return nlohmann::json{{"r", v.r},
                          {"stem_min", v.stem_min},
                          {"stem_bound", v.stem_bound},
                          {"interior_max_stem", v.interior_max},
                          {"entries", entries},
                          {"differentials", diffs}};
}

inline PageView page_from_json(const nlohmann::json& j) {
    PageView v;
    v.r = j.at("r").get<int>();
    v.stem_min = j.value("stem_min", 0LL);
    v.stem_bound = j.value("stem_bound", 0LL);
    v.interior_max = j.value("interior_max_stem", v.stem_bound - v.r);
    for (const auto& e : j.at("entries")) {
        BiDegree bd{e.at(0).get<long long>(), e.at(1).get<long long>()};
        v.dims[bd] = e.at(2).get<long long>();
        v.stem_bound = std::max(v.stem_bound, bd.stem);
    }
    std::map<std::pair<BiDegree, BiDegree>, long long> counts;
    for (const auto& d : j.at("differentials")) {
        BiDegree s{d.at(0).at(0).get<long long>(), d.at(0).at(1).get<long long>()};
        BiDegree t{d.at(1).at(0).get<long long>(), d.at(1).at(1).get<long long>()};
        counts[{s, t}] += 1;
    }
    for (const auto& [key, n] : counts) v.arrows.push_back({v.r, key.first, key.second, n});
    return v;
}

struct ChartOptions {
    int cell = 16;  // pixels per lattice step
    bool shade_boundary = true;
};

/// Deterministic SVG chart: dots per class at (stem, filtration), straight
/// arrows per differential rank unit, untrusted stems shaded.
inline std::string render_svg(const PageView& v, ChartOptions opt = {}) {
    long long smax = 1;
    long long xmax = v.stem_bound, xmin = v.stem_min;
    for (const auto& [bd, d] : v.dims) smax = std::max(smax, bd.filtration);
    const int c = opt.cell;
    const int margin = 2 * c;
    auto px = [&](long long stem) { return margin + int(stem - xmin) * c + c / 2; };
    auto py = [&](long long s) { return margin + int(smax - s) * c + c / 2; };
    int width = margin * 2 + int(xmax - xmin + 1) * c;
    int height = margin * 2 + int(smax + 1) * c;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<defs><marker id=\"tip\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
          "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#c22\"/></marker></defs>\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    if (opt.shade_boundary && v.interior_max < xmax) {
        int bx = px(v.interior_max + 1) - c / 2;
        os << "<rect x=\"" << bx << "\" y=\"" << margin - c / 2 << "\" width=\""
           << px(xmax) + c / 2 - bx << "\" height=\"" << int(smax + 1) * c
           << "\" fill=\"#eee\"/>\n";
    }

    // grid lines and axis labels every four steps
    os << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
    for (long long x = xmin; x <= xmax; ++x)
        os << "<line x1=\"" << px(x) << "\" y1=\"" << py(smax) - c / 2 << "\" x2=\"" << px(x)
           << "\" y2=\"" << py(0) + c / 2 << "\"/>\n";
    for (long long s = 0; s <= smax; ++s)
        os << "<line x1=\"" << px(xmin) - c / 2 << "\" y1=\"" << py(s) << "\" x2=\"" << px(xmax) + c / 2
           << "\" y2=\"" << py(s) << "\"/>\n";
    os << "</g>\n<g font-family=\"monospace\" font-size=\"10\" fill=\"#444\">\n";
    for (long long x = xmin; x <= xmax; ++x)
        if (x % 4 == 0)
            os << "<text x=\"" << px(x) - 3 << "\" y=\"" << height - 4 << "\">" << x << "</text>\n";
    for (long long s = 0; s <= smax; s += 4)
        os << "<text x=\"2\" y=\"" << py(s) + 4 << "\">" << s << "</text>\n";
    os << "<text x=\"" << margin << "\" y=\"12\">r = " << v.r << "</text>\n</g>\n";

    os << "<g fill=\"#222\">\n";
    for (const auto& [bd, d] : v.dims) {
        int cx = px(bd.stem), cy = py(bd.filtration);
        long long dots = std::min<long long>(d, 3);
        for (long long i = 0; i < dots; ++i) {
            int off = int(i - (dots - 1) / 2) * 5 - ((dots - 1) % 2 ? 2 : 0);
            os << "<circle cx=\"" << cx + off << "\" cy=\"" << cy << "\" r=\"2\"/>\n";
        }
        if (d > 3)
            os << "<text x=\"" << cx + 4 << "\" y=\"" << cy - 3
               << "\" font-family=\"monospace\" font-size=\"9\">" << d << "</text>\n";
    }
    os << "</g>\n<g stroke=\"#c22\" stroke-width=\"1\" fill=\"none\">\n";
    for (const auto& a : v.arrows)
        for (long long i = 0; i < a.rank; ++i)
            os << "<line x1=\"" << px(a.src.stem) << "\" y1=\"" << py(a.src.filtration) + int(i) * 2
               << "\" x2=\"" << px(a.tgt.stem) << "\" y2=\"" << py(a.tgt.filtration) + int(i) * 2
               << "\" marker-end=\"url(#tip)\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

/// One SVG document with the given pages stacked vertically.
inline std::string render_svg(const std::vector<PageView>& views, ChartOptions opt = {}) {
    std::vector<std::string> parts;
    int width = 0, height = 0;
    std::vector<std::pair<int, int>> sizes;
    for (const auto& v : views) {
        std::string s = render_svg(v, opt);
        auto grab = [&](const char* key) {
            size_t p = s.find(key);
            return std::atoi(s.c_str() + p + std::strlen(key));
        };
        int w = grab("width=\""), h = grab("height=\"");
        sizes.push_back({w, h});
        width = std::max(width, w);
        // strip the outer <svg> element, keep the body
        size_t open = s.find('\n');
        size_t close = s.rfind("</svg>");
        parts.push_back(s.substr(open + 1, close - open - 1));
        height += h;
    }
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    int y = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        os << "<svg x=\"0\" y=\"" << y << "\" width=\"" << sizes[i].first << "\" height=\""
           << sizes[i].second << "\">\n"
           << parts[i] << "</svg>\n";
        y += sizes[i].second;
    }
    os << "</svg>\n";
    return os.str();
}

/// Per-bidegree counts as a text grid; '.' marks empty cells, '#' dims
/// above nine, '|' the end of the trusted interior.
inline std::string render_text(const PageView& v) {
    long long smax = 0;
    for (const auto& [bd, d] : v.dims) smax = std::max(smax, bd.filtration);
    std::ostringstream os;
    os << "page r=" << v.r << ", stems " << v.stem_min << ".." << v.stem_bound << ", trusted <= "
       << v.interior_max << "\n";
    for (long long s = smax; s >= 0; --s) {
        os << (s % 10) << " ";
        for (long long x = v.stem_min; x <= v.stem_bound; ++x) {
            auto it = v.dims.find({x, s});
            long long d = it == v.dims.end() ? 0 : it->second;
            if (d == 0)
                os << '.';
            else if (d < 10)
                os << d;
            else
                os << '#';
            if (x == v.interior_max) os << '|';
        }
        os << "\n";
    }
    os << "  ";
    for (long long x = v.stem_min; x <= v.stem_bound; ++x) {
        os << (x >= 0 ? char('0' + x % 10) : '-');
        if (x == v.interior_max) os << '|';
    }
    os << "\n";
    return os.str();
}

}  // namespace milnor
