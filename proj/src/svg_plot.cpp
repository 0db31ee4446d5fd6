#include "tightpow/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tightpow {

int CsvTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable parse_csv(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, field_started = false;
    std::size_t line = 1;
    auto end_field = [&] {
        rec.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        if (!(rec.size() == 1 && rec[0].empty())) records.push_back(rec);
        rec.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"') {
            if (field_started && !field.empty())
                throw std::invalid_argument("csv line " + std::to_string(line) + ": stray quote");
            quoted = field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
    if (!field.empty() || !rec.empty()) end_record();

    CsvTable t;
    if (records.empty()) throw std::invalid_argument("csv: no header");
    t.header = records.front();
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != t.header.size())
            throw std::invalid_argument("csv record " + std::to_string(i + 1) + " has " +
                                        std::to_string(records[i].size()) + " fields, header has " +
                                        std::to_string(t.header.size()));
        t.rows.push_back(std::move(records[i]));
    }
    return t;
}

CsvTable parse_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_csv(in);
}

PlotSpec plot_spec_from(const ConfigFile& cfg) {
    const std::string sec = cfg.has_section("plot") ? "plot" : "";
    cfg.require_known(sec, {"x", "y", "series", "ci_low", "ci_high", "logx", "title", "width", "height"});
    PlotSpec s;
    s.x = cfg.get_or(sec, "x", s.x);
    s.y = cfg.get_or(sec, "y", s.y);
    s.series = cfg.get_or(sec, "series", s.series);
    s.ci_low = cfg.get_or(sec, "ci_low", s.ci_low);
    s.ci_high = cfg.get_or(sec, "ci_high", s.ci_high);
    s.logx = cfg.get_bool(sec, "logx", s.logx);
    s.title = cfg.get_or(sec, "title", s.title);
    s.width = static_cast<int>(cfg.get_int(sec, "width", s.width));
    s.height = static_cast<int>(cfg.get_int(sec, "height", s.height));
    if (s.width < 200 || s.height < 150) throw ConfigError(cfg.origin(), 0, "plot must be at least 200x150");
    return s;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
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

double cell(const CsvTable& t, std::size_t row, int col) {
    const std::string& s = t.rows[row][col];
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw std::invalid_argument("row " + std::to_string(row + 1) + ", column '" + t.header[col] +
                                    "': not a number: '" + s + "'");
    return v;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Point {
    double x, y, lo, hi;
};

// Numeric series labels sort numerically, others lexicographically.
bool series_less(const std::string& a, const std::string& b) {
    char* ea = nullptr;
    char* eb = nullptr;
    const double da = std::strtod(a.c_str(), &ea);
    const double db = std::strtod(b.c_str(), &eb);
    const bool na = !a.empty() && *ea == '\0', nb = !b.empty() && *eb == '\0';
    if (na && nb && da != db) return da < db;
    if (na != nb) return na;
    return a < b;
}

}  // namespace

std::string render_svg(const CsvTable& t, const PlotSpec& spec) {
    auto need = [&](const std::string& name) {
        const int c = t.column(name);
        if (c < 0) throw std::invalid_argument("column '" + name + "' not found in csv");
        return c;
    };
    const int cx = need(spec.x);
    const int cy = need(spec.y);
    const int cs = spec.series.empty() ? -1 : need(spec.series);
    const bool whiskers = !spec.ci_low.empty() && !spec.ci_high.empty();
    const int cl = whiskers ? need(spec.ci_low) : -1;
    const int ch = whiskers ? need(spec.ci_high) : -1;

    std::map<std::string, std::vector<Point>, decltype(&series_less)> series(&series_less);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Point pt{cell(t, i, cx), cell(t, i, cy), 0.0, 0.0};
        if (whiskers) {
            pt.lo = cell(t, i, cl);
            pt.hi = cell(t, i, ch);
        }
        if (spec.logx && pt.x <= 0.0)
            throw std::invalid_argument("row " + std::to_string(i + 1) + ": logx needs positive x");
        series[cs < 0 ? std::string() : t.rows[i][cs]].push_back(pt);
    }
    for (auto& [name, pts] : series)
        std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

    auto tx = [&](double x) { return spec.logx ? std::log10(x) : x; };
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& [name, pts] : series)
        for (const auto& p : pts) {
            const double lo = whiskers ? std::min(p.y, p.lo) : p.y;
            const double hi = whiskers ? std::max(p.y, p.hi) : p.y;
            if (first) {
                xmin = xmax = tx(p.x);
                ymin = lo;
                ymax = hi;
                first = false;
            }
            xmin = std::min(xmin, tx(p.x));
            xmax = std::max(xmax, tx(p.x));
            ymin = std::min(ymin, lo);
            ymax = std::max(ymax, hi);
        }
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double left = 70, right = 150, top = 40, bottom = 55;
    const double pw = spec.width - left - right, ph = spec.height - top - bottom;
    auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        os << "<text x=\"" << num(spec.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
           << escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / ticks;
        const double vx = spec.logx ? std::pow(10.0, fx) : fx;
        const double sx = left + pw * i / ticks;
        os << "<line x1=\"" << num(sx) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(sx) << "\" y2=\""
           << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(sx) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">" << label(vx)
           << "</text>\n";
        const double vy = ymin + (ymax - ymin) * i / ticks;
        const double sy = top + ph - ph * i / ticks;
        os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(sy) << "\" x2=\"" << num(left) << "\" y2=\""
           << num(sy) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(sy + 4) << "\" text-anchor=\"end\">" << label(vy)
           << "</text>\n";
    }
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(spec.height - 12.0) << "\" text-anchor=\"middle\">"
       << escape(spec.x) << (spec.logx ? " (log scale)" : "") << "</text>\n";
    os << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << num(top + ph / 2) << ")\">" << escape(spec.y) << "</text>\n";

    int idx = 0;
    for (const auto& [name, pts] : series) {
        const char* color = kPalette[idx % (sizeof kPalette / sizeof kPalette[0])];
        os << "<g stroke=\"" << color << "\" fill=\"" << color << "\">\n";
        if (pts.size() > 1) {
            os << "<polyline fill=\"none\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i)
                os << (i ? " " : "") << num(px(pts[i].x)) << ',' << num(py(pts[i].y));
            os << "\"/>\n";
        }
        for (const auto& p : pts) {
            if (whiskers) {
                os << "<line x1=\"" << num(px(p.x)) << "\" y1=\"" << num(py(p.lo)) << "\" x2=\"" << num(px(p.x))
                   << "\" y2=\"" << num(py(p.hi)) << "\" stroke-width=\"1\"/>\n";
            }
            os << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y)) << "\" r=\"3\"/>\n";
        }
        os << "</g>\n";
        const double ly = top + 10 + 18.0 * idx;
        const double lx = left + pw + 15;
        os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20) << "\" y2=\"" << num(ly)
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        const std::string text = cs < 0 ? spec.y : spec.series + " = " + name;
        os << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\">" << escape(text) << "</text>\n";
        ++idx;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace tightpow
