#include "somimpute/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace somimpute {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void check_view(const MapView& v) {
    if (!v.codebook || !v.assignment) throw std::invalid_argument("map rendering needs a codebook and an assignment");
    if (v.row_labels.size() != v.assignment->size()) {
        throw std::invalid_argument("row labels do not match the assignment");
    }
    if (!v.supplementary.empty() && v.supplementary.size() != v.assignment->size()) {
        throw std::invalid_argument("supplementary flags do not match the assignment");
    }
    const std::size_t units = v.codebook->units();
    for (const auto& p : v.assignment->rows) {
        if (p.unit && *p.unit >= units) throw std::invalid_argument("assignment refers to a unit outside the map");
    }
    if (v.superclasses && v.superclasses->labels.size() != units) {
        throw std::invalid_argument("super-classing does not match the map");
    }
    if (v.modalities && v.modalities->size() != units) {
        throw std::invalid_argument("modality table does not match the map");
    }
}

struct Member {
    std::string label;
    bool supplementary;
};

std::vector<std::vector<Member>> members_by_unit(const MapView& v) {
    std::vector<std::vector<Member>> out(v.codebook->units());
    for (std::size_t r = 0; r < v.assignment->size(); ++r) {
        const auto& u = v.assignment->rows[r].unit;
        if (!u) continue;
        out[*u].push_back({v.row_labels[r], !v.supplementary.empty() && v.supplementary[r]});
    }
    return out;
}

std::vector<std::string> all_modalities(const std::vector<std::map<std::string, double>>& table) {
    std::set<std::string> s;
    for (const auto& m : table) {
        for (const auto& [label, share] : m) s.insert(label);
    }
    return {s.begin(), s.end()};
}

}  // namespace

const std::vector<std::string>& superclass_palette() {
    static const std::vector<std::string> palette{"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
                                                  "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd"};
    return palette;
}

std::string render_map_text(const MapView& view) {
    check_view(view);
    const GridTopology& topo = view.codebook->topology();
    const auto members = members_by_unit(view);
    std::ostringstream out;
    out << "map " << topo.rows() << "x" << topo.cols();
    if (!view.title.empty()) out << " " << view.title;
    out << "\n";
    for (Unit u = 0; u < topo.size(); ++u) {
        const GridCoord c = topo.coord(u);
        out << "[" << c.row << "," << c.col << "]";
        if (view.superclasses) out << " sc=" << view.superclasses->labels[u];
        out << " n=" << members[u].size() << ":";
        if (members[u].empty()) out << " (empty)";
        for (std::size_t i = 0; i < members[u].size(); ++i) {
            const Member& m = members[u][i];
            out << (i ? ", " : " ") << (m.supplementary ? "*" + m.label + "*" : m.label);
        }
        if (view.modalities && !(*view.modalities)[u].empty()) {
            out << " |";
            for (const auto& [label, share] : (*view.modalities)[u]) out << " " << label << "=" << fixed(share, 3);
        }
        out << "\n";
    }
    std::vector<std::string> lost;
    for (std::size_t r = 0; r < view.assignment->size(); ++r) {
        if (!view.assignment->rows[r].unit) lost.push_back(view.row_labels[r]);
    }
    if (!lost.empty()) {
        out << "unclassifiable:";
        for (std::size_t i = 0; i < lost.size(); ++i) out << (i ? ", " : " ") << lost[i];
        out << "\n";
    }
    return out.str();
}

std::string render_map_svg(const MapView& view) {
    check_view(view);
    const GridTopology& topo = view.codebook->topology();
    const auto members = members_by_unit(view);
    std::size_t most = 1;
    for (const auto& m : members) most = std::max(most, m.size());

    const int cell_w = 170;
    const int line_h = 14;
    const int bar_h = view.modalities ? 12 : 0;
    const int cell_h = 26 + line_h * static_cast<int>(most) + bar_h;
    const int top = view.title.empty() ? 10 : 34;
    const int width = 20 + cell_w * static_cast<int>(topo.cols());
    const int height = top + 10 + cell_h * static_cast<int>(topo.rows());
    const auto modality_order = view.modalities ? all_modalities(*view.modalities) : std::vector<std::string>{};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!view.title.empty()) {
        svg << "<text x=\"10\" y=\"22\" font-size=\"15\" font-weight=\"bold\">" << xml_escape(view.title)
            << "</text>\n";
    }
    for (Unit u = 0; u < topo.size(); ++u) {
        const GridCoord c = topo.coord(u);
        const int x = 10 + cell_w * static_cast<int>(c.col);
        const int y = top + cell_h * static_cast<int>(c.row);
        std::string fill = "#ffffff";
        if (view.superclasses) {
            const auto& pal = superclass_palette();
            fill = pal[view.superclasses->labels[u] % pal.size()];
        }
        svg << "<g class=\"unit\" data-unit=\"" << u << "\"";
        if (view.superclasses) svg << " data-superclass=\"" << view.superclasses->labels[u] << "\"";
        svg << ">\n";
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w << "\" height=\"" << cell_h
            << "\" fill=\"" << fill << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << x + 4 << "\" y=\"" << y + 13 << "\" fill=\"#666666\" font-size=\"9\">(" << c.row
            << "," << c.col << ") n=" << members[u].size() << "</text>\n";
        for (std::size_t i = 0; i < members[u].size(); ++i) {
            const Member& m = members[u][i];
            svg << "<text x=\"" << x + 6 << "\" y=\"" << y + 27 + line_h * static_cast<int>(i) << "\"";
            if (m.supplementary) svg << " class=\"supplementary\" font-style=\"italic\" fill=\"#b2182b\"";
            svg << ">" << xml_escape(m.label) << "</text>\n";
        }
        if (view.modalities && !(*view.modalities)[u].empty()) {
            double offset = 0.0;
            const double bar_w = cell_w - 8;
            const int by = y + cell_h - bar_h - 2;
            for (std::size_t mi = 0; mi < modality_order.size(); ++mi) {
                const auto it = (*view.modalities)[u].find(modality_order[mi]);
                if (it == (*view.modalities)[u].end()) continue;
                const double n = static_cast<double>(modality_order.size());
                const int grey = static_cast<int>(std::lround(230.0 - 200.0 * static_cast<double>(mi) / std::max(1.0, n - 1.0)));
                char colour[8];
                std::snprintf(colour, sizeof colour, "#%02x%02x%02x", grey, grey, grey);
                svg << "<rect class=\"modality\" x=\"" << fixed(x + 4 + offset, 2) << "\" y=\"" << by
                    << "\" width=\"" << fixed(bar_w * it->second, 2) << "\" height=\"" << bar_h
                    << "\" fill=\"" << colour << "\"><title>" << xml_escape(modality_order[mi]) << " "
                    << fixed(it->second, 3) << "</title></rect>\n";
                offset += bar_w * it->second;
            }
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_curve_svg(const EvalReport& report, const std::string& title) {
    const int width = 560, height = 360;
    const int left = 60, right = 20, top = title.empty() ? 20 : 44, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double ymax = 0.0;
    std::size_t dmin = report.rows.empty() ? 0 : report.rows.front().d;
    std::size_t dmax = dmin;
    for (const auto& r : report.rows) {
        ymax = std::max({ymax, r.rmse_som, r.rmse_mean});
        dmin = std::min(dmin, r.d);
        dmax = std::max(dmax, r.d);
    }
    ymax = ymax > 0.0 ? std::ceil(ymax * 5.0) / 5.0 : 1.0;
    const double dspan = dmax > dmin ? static_cast<double>(dmax - dmin) : 1.0;
    auto px = [&](std::size_t d) { return left + plot_w * static_cast<double>(d - dmin) / dspan; };
    auto py = [&](double v) { return top + plot_h * (1.0 - v / ymax); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
            << "</text>\n";
    }
    svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = ymax * i / 5.0;
        svg << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(v) + 4, 2) << "\" text-anchor=\"end\">"
            << fixed(v, 2) << "</text>\n";
        svg << "<line x1=\"" << left << "\" y1=\"" << fixed(py(v), 2) << "\" x2=\"" << left + plot_w << "\" y2=\""
            << fixed(py(v), 2) << "\" stroke=\"#dddddd\"/>\n";
    }
    for (const auto& r : report.rows) {
        svg << "<text x=\"" << fixed(px(r.d), 2) << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"middle\">"
            << r.d << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">values deleted per row</text>\n";
    svg << "<text transform=\"translate(16," << top + plot_h / 2
        << ") rotate(-90)\" text-anchor=\"middle\">RMSE (standardized units)</text>\n";

    auto series = [&](const char* cls, const char* colour, auto value) {
        svg << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            svg << (i ? " " : "") << fixed(px(report.rows[i].d), 2) << "," << fixed(py(value(report.rows[i])), 2);
        }
        svg << "\"/>\n";
        for (const auto& r : report.rows) {
            svg << "<circle cx=\"" << fixed(px(r.d), 2) << "\" cy=\"" << fixed(py(value(r)), 2) << "\" r=\"3\" fill=\""
                << colour << "\"/>\n";
        }
    };
    series("som", "#2166ac", [](const EvalRow& r) { return r.rmse_som; });
    series("mean", "#b2182b", [](const EvalRow& r) { return r.rmse_mean; });
    svg << "<text x=\"" << left + 10 << "\" y=\"" << top + 12 << "\" fill=\"#2166ac\">map estimate</text>\n";
    svg << "<text x=\"" << left + 10 << "\" y=\"" << top + 26 << "\" fill=\"#b2182b\">column mean</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace somimpute
