#pragma once

#include <istream>
#include <string>
#include <vector>

#include "tightpow/config.hpp"

namespace tightpow {

/// RFC-4180 table; the first record is the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column, or -1.
    int column(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in);
CsvTable parse_csv_file(const std::string& path);

struct PlotSpec {
    std::string x = "p";
    std::string y = "success_rate";
    std::string series = "n";  ///< one polyline per distinct value; empty for a single series
    std::string ci_low = "ci_low";
    std::string ci_high = "ci_high";  ///< whiskers are drawn when both CI names are set
    bool logx = false;
    std::string title;
    int width = 640;
    int height = 420;
};

/// Keys of the [plot] section (or the unnamed section when [plot] is absent).
PlotSpec plot_spec_from(const ConfigFile& cfg);

/// Self-contained SVG: axes, ticks, one polyline with markers per series, CI
/// whiskers and a legend. Output depends only on the inputs. Missing columns
/// and non-numeric cells throw std::invalid_argument.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

}  // namespace tightpow
