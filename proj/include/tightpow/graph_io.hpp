#pragma once

#include <iosfwd>
#include <string>

#include "tightpow/kgraph.hpp"

namespace tightpow {

/// Text format: header line `k n m`, then m lines of k ascending 0-based vertex
/// ids separated by single spaces. Lines starting with '#' are comments and
/// blank lines are skipped on read. A repeated edge line is a parse error.
KGraph read_graph(std::istream& in);
KGraph read_graph_file(const std::string& path);

/// Writes the header and one line per edge in colex order, LF endings.
void write_graph(std::ostream& out, const KGraph& g);
void write_graph_file(const std::string& path, const KGraph& g);

}  // namespace tightpow
