#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tightpow/absorbing.hpp"
#include "tightpow/counting.hpp"
#include "tightpow/exact_search.hpp"
#include "tightpow/graph_io.hpp"
#include "tightpow/harness.hpp"
#include "tightpow/hosts.hpp"
#include "tightpow/power.hpp"
#include "tightpow/probability.hpp"
#include "tightpow/random_model.hpp"

namespace py = pybind11;
using namespace tightpow;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hamilton power cycles in dense hosts plus random k-graphs";
    m.attr("__version__") = artifact_version();

    py::class_<KGraph>(m, "KGraph")
        .def(py::init<int, std::uint32_t>(), py::arg("k"), py::arg("n"))
        .def_static("build", &KGraph::build, py::arg("k"), py::arg("n"), py::arg("edges"))
        .def_static("complete", &KGraph::complete, py::arg("k"), py::arg("n"))
        .def_property_readonly("k", &KGraph::k)
        .def_property_readonly("n", &KGraph::n)
        .def("edge_count", &KGraph::edge_count)
        .def("edges", &KGraph::edges)
        .def("has_edge", [](const KGraph& g, std::vector<Vertex> s) { return g.has_edge(s); })
        .def("min_codegree", &KGraph::min_codegree)
        .def("__eq__", [](const KGraph& a, const KGraph& b) { return a == b; })
        .def("__repr__", [](const KGraph& g) {
            return "<KGraph k=" + std::to_string(g.k()) + " n=" + std::to_string(g.n()) +
                   " edges=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("read_graph_file", &read_graph_file);
    m.def("write_graph_file", &write_graph_file);
    m.def("graph_union", &graph_union);

    m.def("power_path", &power_path, py::arg("k"), py::arg("r"), py::arg("m"));
    m.def("power_cycle", &power_cycle, py::arg("k"), py::arg("r"), py::arg("m"));
    m.def("g_edges", &g_edges, py::arg("k"), py::arg("r"), py::arg("b"));
    m.def(
        "threshold_exponent",
        [](int k, int r) {
            const Rational c = threshold_exponent(k, r);
            return std::make_pair(c.num(), c.den());
        },
        py::arg("k"), py::arg("r"), "c as a (numerator, denominator) pair");
    m.def("is_power_hamilton_cycle",
          [](const KGraph& g, int r, std::vector<Vertex> order) { return is_power_hamilton_cycle(g, r, order); });

    m.def("log_phi", [](const KGraph& f, std::uint64_t n, double p) { return phi(f, n, p).phi.log(); });
    m.def("log_expected_copies",
          [](const KGraph& f, std::uint64_t n, double p) { return expected_labelled_copies(f, n, p).log(); });
    m.def("first_moment_log", &first_moment_log, py::arg("k"), py::arg("r"), py::arg("n"), py::arg("p"),
          py::arg("cyclic") = false);
    m.def("split_probability", &split_probability, py::arg("p"), py::arg("rounds"));

    m.def(
        "sample_gnp",
        [](int k, std::uint32_t n, double p, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            return sample_gnp(k, n, p, rng);
        },
        py::arg("k"), py::arg("n"), py::arg("p"), py::arg("seed"), py::arg("stream") = 0);
    m.def("split_host", &split_host, py::arg("k"), py::arg("n"), py::arg("alpha"));
    m.def("complete_host", &complete_host, py::arg("k"), py::arg("n"));

    m.def(
        "count_labelled_copies",
        [](const KGraph& f, const KGraph& g, std::uint64_t budget) {
            CountOptions opt;
            opt.budget = budget;
            const auto rep = count_labelled_copies(f, g, opt);
            py::dict d;
            d["labelled_count"] = rep.labelled_count;
            d["overlapping_pairs"] = rep.overlaps_counted ? py::object(py::int_(rep.overlapping_pairs)) : py::none();
            d["truncated"] = rep.truncated;
            d["nodes"] = rep.nodes;
            return d;
        },
        py::arg("pattern"), py::arg("host"), py::arg("budget") = 10'000'000);

    m.def(
        "contains_power_hamilton",
        [](const KGraph& g, int r, std::uint64_t budget) {
            const auto res = contains_power_hamilton(g, r, budget);
            py::dict d;
            d["status"] = to_string(res.status);
            d["nodes"] = res.nodes;
            d["order"] = res.order;
            return d;
        },
        py::arg("g"), py::arg("r"), py::arg("budget") = kDefaultExactBudget);

    m.def(
        "run_pipeline",
        [](const KGraph& host, double p, int r, std::uint64_t seed) {
            PipelineConfig cfg;
            cfg.r = r;
            RngStream rng(seed, 0);
            const auto res = run_pipeline(host, p, cfg, rng);
            py::dict d;
            d["success"] = res.success;
            d["stage"] = res.failed_stage;
            d["message"] = res.message;
            d["order"] = res.order;
            py::dict counters;
            for (const auto& [key, v] : res.counters) counters[py::str(key)] = v;
            d["counters"] = counters;
            return d;
        },
        py::arg("host"), py::arg("p"), py::arg("r"), py::arg("seed") = 1);
}
