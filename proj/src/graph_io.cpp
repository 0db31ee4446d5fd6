#include "tightpow/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <set>

namespace tightpow {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("graph text line " + std::to_string(line) + ": " + what);
}

std::vector<long long> parse_ints(const std::string& text, std::size_t line) {
    std::istringstream ss(text);
    std::vector<long long> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            fail(line, "not an integer: '" + tok + "'");
        }
        if (used != tok.size()) fail(line, "not an integer: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

KGraph read_graph(std::istream& in) {
    std::string text;
    std::size_t line = 0;
    bool have_header = false;
    long long k = 0, n = 0, m = 0;
    std::vector<std::vector<Vertex>> edges;
    std::set<std::vector<Vertex>> seen;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty() || text[0] == '#') continue;
        auto ints = parse_ints(text, line);
        if (ints.empty()) continue;
        if (!have_header) {
            if (ints.size() != 3) fail(line, "header must be 'k n m'");
            k = ints[0];
            n = ints[1];
            m = ints[2];
            if (k < 2 || k > kMaxUniformity || n < 0 || m < 0) fail(line, "invalid header values");
            have_header = true;
            continue;
        }
        if (static_cast<long long>(edges.size()) == m) fail(line, "more edge lines than declared");
        if (static_cast<long long>(ints.size()) != k)
            fail(line, "expected " + std::to_string(k) + " vertex ids");
        std::vector<Vertex> e;
        for (std::size_t i = 0; i < ints.size(); ++i) {
            if (ints[i] < 0 || ints[i] >= n) fail(line, "vertex id out of range");
            if (i > 0 && ints[i] <= ints[i - 1]) fail(line, "vertex ids must be strictly increasing");
            e.push_back(static_cast<Vertex>(ints[i]));
        }
        if (!seen.insert(e).second) fail(line, "duplicate edge");
        edges.push_back(std::move(e));
    }
    if (!have_header) throw std::runtime_error("graph text: missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw std::runtime_error("graph text: declared " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges.size()));
    return KGraph::build(static_cast<int>(k), static_cast<std::uint32_t>(n), edges);
}

KGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const KGraph& g) {
    out << g.k() << ' ' << g.n() << ' ' << g.edge_count() << '\n';
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        auto e = g.edge(i);
        for (int j = 0; j < g.k(); ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
}

void write_graph_file(const std::string& path, const KGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_graph(out, g);
}

}  // namespace tightpow
