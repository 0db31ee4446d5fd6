#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tightpow/graph_io.hpp"
#include "tightpow/kgraph.hpp"

using namespace tightpow;

TEST_CASE("build canonicalizes edges and collapses repeats") {
    KGraph g = KGraph::build(3, 6, {{2, 0, 1}, {0, 1, 2}, {5, 3, 4}});
    CHECK(g.edge_count() == 2);
    const Vertex a[] = {1, 2, 0};
    CHECK(g.has_edge(a));
    const Vertex b[] = {0, 1, 3};
    CHECK_FALSE(g.has_edge(b));
    CHECK(g.max_edges() == 20);
}

TEST_CASE("invalid edges are rejected") {
    CHECK_THROWS_AS(KGraph::build(3, 5, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(KGraph::build(3, 5, {{0, 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(KGraph::build(3, 5, {{0, 1, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(KGraph(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(KGraph(9, 12), std::invalid_argument);
    KGraph g = KGraph::complete(3, 5);
    const Vertex rep[] = {0, 0, 1};
    CHECK_THROWS_AS((void)g.has_edge(rep), std::invalid_argument);
    const Vertex big[] = {0, 1, 7};
    CHECK_THROWS_AS((void)g.has_edge(big), std::invalid_argument);
}

TEST_CASE("edges come out in colex order") {
    KGraph g = KGraph::complete(2, 4);
    const std::vector<std::vector<Vertex>> want = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    CHECK(g.edges() == want);
}

TEST_CASE("codegree queries agree with brute force on random graphs") {
    RngStream rng(11, 0);
    for (int k = 2; k <= 4; ++k)
        for (int trial = 0; trial < 6; ++trial) {
            const std::uint32_t n = 5 + static_cast<std::uint32_t>(trial);
            KGraph g = oracle::random_graph(k, n, 0.3 + 0.1 * trial, rng);
            CHECK(g.min_codegree() == oracle::min_codegree(g));
            std::vector<Vertex> s(k - 1);
            for (int i = 0; i < k - 1; ++i) s[i] = static_cast<Vertex>(i);
            auto nb = g.neighborhood(s);
            CHECK(nb.size() == g.codegree(s));
            for (Vertex v : nb) {
                auto e = s;
                e.push_back(v);
                CHECK(oracle::has(g, e));
            }
        }
}

TEST_CASE("complete graph has codegree n-k+1 and spans every clique") {
    KGraph g = KGraph::complete(3, 8);
    CHECK(g.min_codegree() == 6);
    const Vertex s[] = {7, 2, 4, 0};
    CHECK(g.spans_clique(s));
    KGraph e(3, 8);
    CHECK(e.min_codegree() == 0);
    CHECK_FALSE(e.spans_clique(s));
}

TEST_CASE("hash index path matches the dense index") {
    // C(300, 4) exceeds the dense limit, so lookups go through the hash set.
    KGraph g = KGraph::build(4, 300, {{1, 2, 3, 299}, {0, 100, 200, 250}});
    const Vertex a[] = {299, 1, 3, 2};
    const Vertex b[] = {0, 100, 200, 251};
    CHECK(g.has_edge(a));
    CHECK_FALSE(g.has_edge(b));
}

TEST_CASE("union and induced subgraph") {
    KGraph a = KGraph::build(2, 5, {{0, 1}, {1, 2}});
    KGraph b = KGraph::build(2, 5, {{1, 2}, {3, 4}});
    KGraph u = graph_union(a, b);
    CHECK(u.edge_count() == 3);
    CHECK_THROWS_AS(graph_union(a, KGraph(2, 6)), std::invalid_argument);
    const Vertex keep[] = {2, 1, 4};
    auto [sub, map] = induced_subgraph(u, keep);
    CHECK(sub.n() == 3);
    CHECK(sub.edge_count() == 1);
    CHECK(map == std::vector<Vertex>{2, 1, 4});
    const Vertex e[] = {0, 1};
    CHECK(sub.has_edge(e));
}

TEST_CASE("graph files round-trip and report errors with line numbers") {
    KGraph g = KGraph::build(3, 7, {{4, 5, 6}, {0, 1, 2}, {1, 3, 6}});
    std::stringstream ss;
    write_graph(ss, g);
    CHECK(ss.str() == "3 7 3\n0 1 2\n1 3 6\n4 5 6\n");
    CHECK(read_graph(ss) == g);

    std::istringstream comments("# a comment\n\n2 3 1\r\n0 2\n");
    CHECK(read_graph(comments).edge_count() == 1);

    auto fails = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            (void)read_graph(in);
        } catch (const std::runtime_error& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
        return false;
    };
    CHECK(fails("2 3 1\n2 0\n", "line 2"));
    CHECK(fails("2 3 2\n0 1\n0  1\n", "line 3"));
    CHECK(fails("2 3 2\n0 1\n", "declared 2"));
    CHECK(fails("2 3 1\n0 1 2\n", "expected 2"));
    CHECK(fails("2 3 1\n0 3\n", "line 2"));
    CHECK(fails("", "header"));
}
