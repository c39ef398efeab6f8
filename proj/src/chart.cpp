#include "synto/chart.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace synto::chart {

namespace {

// display width = code points; the labels only use single-width glyphs
std::size_t utf8_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

struct Grid {
    int x_lo, x_hi, y_lo, y_hi;
    // cell text per (weight, degree), already label-sorted
    std::map<std::pair<int, int>, std::vector<std::string>> cells;
};

Grid make_grid(const inst::BigradedBasis& basis, const ChartSpec& spec) {
    if (spec.x_lo > spec.x_hi || spec.y_lo > spec.y_hi)
        throw Error(errc::range_empty,
                    "chart axes [" + std::to_string(spec.x_lo) + "," + std::to_string(spec.x_hi) +
                        "]x[" + std::to_string(spec.y_lo) + "," + std::to_string(spec.y_hi) +
                        "] are empty");
    Grid g{spec.x_lo, spec.x_hi, spec.y_lo, spec.y_hi, {}};
    for (const auto& c : basis.classes) {
        g.x_lo = std::min(g.x_lo, c.degree);
        g.x_hi = std::max(g.x_hi, c.degree);
        g.y_lo = std::min(g.y_lo, c.weight);
        g.y_hi = std::max(g.y_hi, c.weight);
        g.cells[{c.weight, c.degree}].push_back(c.label);
    }
    for (auto& [k, v] : g.cells) std::sort(v.begin(), v.end());
    return g;
}

}  // namespace

ChartSpec ChartSpec::fit(const inst::BigradedBasis& basis) {
    ChartSpec s;
    if (basis.classes.empty()) {
        s.x_lo = basis.window.deg_lo;
        s.x_hi = basis.window.deg_hi;
        return s;
    }
    s.x_lo = s.x_hi = basis.classes.front().degree;
    s.y_lo = s.y_hi = basis.classes.front().weight;
    for (const auto& c : basis.classes) {
        s.x_lo = std::min(s.x_lo, c.degree);
        s.x_hi = std::max(s.x_hi, c.degree);
        s.y_lo = std::min(s.y_lo, c.weight);
        s.y_hi = std::max(s.y_hi, c.weight);
    }
    s.x_lo -= 1;
    s.x_hi += 1;
    s.y_lo -= 1;
    s.y_hi += 1;
    return s;
}

std::vector<DiffRecord> diff_records(const std::vector<eng::LogEntry>& log,
                                     const eng::Shift& shift) {
    std::vector<DiffRecord> out;
    out.reserve(log.size());
    for (const auto& e : log)
        out.push_back({e.page, e.source, e.source + shift.delta(e.page), e.rank});
    return out;
}

std::string render_text(const inst::BigradedBasis& basis, const ChartSpec& spec) {
    Grid g = make_grid(basis, spec);

    auto cell_text = [&](int wt, int deg) -> std::string {
        auto it = g.cells.find({wt, deg});
        if (it == g.cells.end()) return "";
        if (!spec.full_labels) return std::to_string(it->second.size());
        std::string out;
        for (const auto& l : it->second) {
            if (!out.empty()) out += ",";
            out += l;
        }
        return out;
    };

    std::map<int, std::size_t> width;
    for (int d = g.x_lo; d <= g.x_hi; ++d) {
        std::size_t w = std::to_string(d).size();
        for (int s = g.y_lo; s <= g.y_hi; ++s) w = std::max(w, utf8_width(cell_text(s, d)));
        width[d] = w;
    }

    std::ostringstream os;
    for (int s = g.y_hi; s >= g.y_lo; --s) {
        os << "s=";
        std::string ws = std::to_string(s);
        os << std::string(3 - std::min<std::size_t>(3, ws.size()), ' ') << ws << " |";
        for (int d = g.x_lo; d <= g.x_hi; ++d) {
            std::string c = cell_text(s, d);
            os << ' ' << c << std::string(width[d] - utf8_width(c), ' ');
        }
        os << '\n';
    }
    os << "------+";
    for (int d = g.x_lo; d <= g.x_hi; ++d) os << std::string(width[d] + 1, '-');
    os << '\n' << "      |";
    for (int d = g.x_lo; d <= g.x_hi; ++d) {
        std::string c = std::to_string(d);
        os << ' ' << c << std::string(width[d] - c.size(), ' ');
    }
    os << '\n';
    return os.str();
}

std::string render_svg(const inst::BigradedBasis& basis, const ChartSpec& spec) {
    Grid g = make_grid(basis, spec);
    const int cell = 40, margin = 50;
    int nx = g.x_hi - g.x_lo + 1, ny = g.y_hi - g.y_lo + 1;
    int w = 2 * margin + (nx - 1) * cell;
    int h = 2 * margin + (ny - 1) * cell;
    auto cx = [&](int deg) { return margin + (deg - g.x_lo) * cell; };
    auto cy = [&](int wt) { return margin + (g.y_hi - wt) * cell; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
       << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
       << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    for (int i = 0; i <= nx; ++i) {
        int x = margin - cell / 2 + i * cell;
        os << "<line x1=\"" << x << "\" y1=\"" << margin - cell / 2 << "\" x2=\"" << x
           << "\" y2=\"" << h - margin + cell / 2 << "\" stroke=\"#dddddd\"/>\n";
    }
    for (int i = 0; i <= ny; ++i) {
        int y = margin - cell / 2 + i * cell;
        os << "<line x1=\"" << margin - cell / 2 << "\" y1=\"" << y << "\" x2=\""
           << w - margin + cell / 2 << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    }
    for (int d = g.x_lo; d <= g.x_hi; ++d)
        os << "<text x=\"" << cx(d) << "\" y=\"" << h - margin + cell
           << "\" text-anchor=\"middle\" font-size=\"11\">" << d << "</text>\n";
    for (int s = g.y_lo; s <= g.y_hi; ++s)
        os << "<text x=\"" << margin - cell << "\" y=\"" << cy(s) + 4
           << "\" text-anchor=\"middle\" font-size=\"11\">s=" << s << "</text>\n";
    for (int s = g.y_hi; s >= g.y_lo; --s)
        for (int d = g.x_lo; d <= g.x_hi; ++d) {
            auto it = g.cells.find({s, d});
            if (it == g.cells.end()) continue;
            int k = static_cast<int>(it->second.size());
            for (int i = 0; i < k; ++i) {
                // collisions stack above/below the cell center in label order
                int dy = i * 14 - ((k - 1) * 14) / 2;
                if (spec.full_labels)
                    os << "<text x=\"" << cx(d) << "\" y=\"" << cy(s) + dy + 4
                       << "\" text-anchor=\"middle\" font-size=\"10\">" << it->second[i]
                       << "</text>\n";
                else
                    os << "<circle cx=\"" << cx(d) << "\" cy=\"" << cy(s) + dy
                       << "\" r=\"3\" fill=\"black\"/>\n";
            }
        }
    os << "</svg>\n";
    return os.str();
}

std::string render_json(const inst::BigradedBasis& basis,
                        const std::vector<DiffRecord>& differentials) {
    nlohmann::ordered_json j;
    j["p"] = basis.p;
    j["n"] = basis.n;
    j["window"] = {{"deg_lo", basis.window.deg_lo}, {"deg_hi", basis.window.deg_hi}};
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& c : basis.classes) {
        nlohmann::ordered_json jc;
        jc["label"] = c.label;
        jc["degree"] = c.degree;
        jc["adams_weight"] = c.weight;
        if (!c.piece.empty()) {
            jc["filtration"] = c.filtration;
            jc["piece"] = c.piece;
        }
        j["classes"].push_back(jc);
    }
    if (!differentials.empty()) {
        j["differentials"] = nlohmann::ordered_json::array();
        for (const auto& d : differentials)
            j["differentials"].push_back(
                {{"page", d.page},
                 {"source", {{"degree", d.source.degree}, {"adams_weight", d.source.weight}}},
                 {"target", {{"degree", d.target.degree}, {"adams_weight", d.target.weight}}},
                 {"rank", d.rank}});
    }
    return j.dump(2) + "\n";
}

inst::BigradedBasis parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    inst::BigradedBasis out;
    out.p = j.at("p").get<unsigned>();
    out.n = j.at("n").get<int>();
    out.window.deg_lo = j.at("window").at("deg_lo").get<int>();
    out.window.deg_hi = j.at("window").at("deg_hi").get<int>();
    for (const auto& jc : j.at("classes")) {
        inst::ClassInfo c;
        c.label = jc.at("label").get<std::string>();
        c.degree = jc.at("degree").get<int>();
        c.weight = jc.at("adams_weight").get<int>();
        if (jc.contains("filtration")) c.filtration = jc.at("filtration").get<int>();
        if (jc.contains("piece")) c.piece = jc.at("piece").get<std::string>();
        out.classes.push_back(c);
    }
    return out;
}

}  // namespace synto::chart
