#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/lpa.hpp"
#include "labelprop/quality.hpp"
#include "labelprop/synthetic.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace labelprop;

namespace {

LpaConfig make_config(double tolerance, int max_iterations,
                      const std::string& tie_break, bool pruning,
                      int chunk_size, int num_threads) {
  LpaConfig cfg;
  cfg.tolerance = tolerance;
  cfg.max_iterations = max_iterations;
  cfg.tie_break = tie_break_from_string(tie_break);
  cfg.pruning = pruning;
  cfg.chunk_size = chunk_size;
  cfg.num_threads = num_threads;
  cfg.check();
  return cfg;
}

py::array_t<VertexId> to_array(const std::vector<VertexId>& v) {
  py::array_t<VertexId> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Graph graph_from_edges(
    const std::vector<std::tuple<VertexId, VertexId, Weight>>& edges,
    py::object num_vertices, bool symmetrize) {
  std::vector<Arc> arcs;
  arcs.reserve(edges.size() * (symmetrize ? 2 : 1));
  long long max_id = -1;
  for (const auto& [u, v, w] : edges) {
    arcs.push_back({u, v, w});
    if (symmetrize && u != v) arcs.push_back({v, u, w});
    max_id = std::max(max_id, static_cast<long long>(std::max(u, v)));
  }
  VertexId n;
  if (num_vertices.is_none()) {
    n = static_cast<VertexId>(max_id + 1);
  } else {
    n = num_vertices.cast<VertexId>();
  }
  return build_graph(n, arcs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Parallel label-propagation community detection on CSR graphs: "
      "loaders, the propagation engine, modularity scoring, and synthetic "
      "benchmark generators.";

  // Error translation: every library error surfaces as labelprop.Error or a
  // subclass of it.
  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<FormatError>(m, "FormatError", error);
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<BoundsError>(m, "BoundsError", error);
  py::register_exception<ConfigError>(m, "ConfigError", error);
  py::register_exception<QualityError>(m, "QualityError", error);
  py::register_exception<IoError>(m, "IoError", error);

  py::class_<Graph>(m, "Graph",
                    "Immutable undirected weighted graph in CSR form; every "
                    "undirected edge is stored as two directed arcs.")
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_arcs", &Graph::num_arcs)
      .def_property_readonly("total_weight_2m",
                             [](const Graph& g) { return g.total_weight_2m; })
      .def_property_readonly(
          "weighted_degrees",
          [](const Graph& g) { return to_array(g.weighted_degrees); })
      .def("degree", &Graph::degree, py::arg("v"))
      .def(
          "neighbors",
          [](const Graph& g, VertexId v) {
            if (v >= g.num_vertices()) throw BoundsError("vertex out of range");
            const auto span = g.neighbors(v);
            return to_array(std::vector<VertexId>(span.begin(), span.end()));
          },
          py::arg("v"), "Arc targets of v, in storage order.")
      .def(
          "arc_weights",
          [](const Graph& g, VertexId v) {
            if (v >= g.num_vertices()) throw BoundsError("vertex out of range");
            const auto span = g.arc_weights(v);
            return to_array(std::vector<double>(span.begin(), span.end()));
          },
          py::arg("v"), "Arc weights of v, parallel to neighbors(v).")
      .def("__repr__", [](const Graph& g) {
        std::ostringstream s;
        s << "<Graph n=" << g.num_vertices() << " arcs=" << g.num_arcs()
          << ">";
        return s.str();
      });

  py::class_<LpaResult>(m, "LpaResult", "Outcome of one propagation run.")
      .def_property_readonly(
          "labels", [](const LpaResult& r) { return to_array(r.labels); })
      .def_readonly("iterations", &LpaResult::iterations)
      .def_readonly("delta_history", &LpaResult::delta_history)
      .def_readonly("wall_time_seconds", &LpaResult::wall_time_seconds)
      .def_readonly("converged", &LpaResult::converged)
      .def("__repr__", [](const LpaResult& r) {
        std::ostringstream s;
        s << "<LpaResult iterations=" << r.iterations
          << " converged=" << (r.converged ? "True" : "False") << ">";
        return s.str();
      });

  py::class_<PartitionStats>(m, "PartitionStats",
                             "Community count, size histogram, modularity.")
      .def_readonly("num_communities", &PartitionStats::num_communities)
      .def_readonly("size_histogram", &PartitionStats::size_histogram)
      .def_readonly("modularity", &PartitionStats::modularity);

  m.def("from_edges", &graph_from_edges, py::arg("edges"),
        py::arg("num_vertices") = py::none(), py::arg("symmetrize") = true,
        "Build a graph from (u, v, w) triples; the reverse of each non-loop "
        "arc is added when symmetrize is true.");
  m.def(
      "from_edges",
      [](const std::vector<std::pair<VertexId, VertexId>>& edges,
         py::object num_vertices, bool symmetrize) {
        std::vector<std::tuple<VertexId, VertexId, Weight>> weighted;
        weighted.reserve(edges.size());
        for (const auto& [u, v] : edges) weighted.emplace_back(u, v, 1.0);
        return graph_from_edges(weighted, num_vertices, symmetrize);
      },
      py::arg("edges"), py::arg("num_vertices") = py::none(),
      py::arg("symmetrize") = true,
      "Build a unit-weight graph from (u, v) pairs.");

  m.def(
      "load_edge_list",
      [](const std::string& path, bool weighted, bool one_indexed,
         bool symmetrize) {
        EdgeListOptions opt;
        opt.weighted = weighted;
        opt.one_indexed = one_indexed;
        opt.symmetrize = symmetrize;
        return load_edge_list_file(path, opt);
      },
      py::arg("path"), py::arg("weighted") = false,
      py::arg("one_indexed") = false, py::arg("symmetrize") = true);
  m.def("load_matrix_market", &load_matrix_market_file, py::arg("path"));
  m.def("load_csr_binary", &load_csr_binary_file, py::arg("path"));
  m.def("save_csr_binary", &save_csr_binary_file, py::arg("graph"),
        py::arg("path"));
  m.def("write_edge_list", &write_edge_list_file, py::arg("graph"),
        py::arg("path"));
  m.def("write_matrix_market", &write_matrix_market_file, py::arg("graph"),
        py::arg("path"));

  m.def(
      "validate",
      [](const Graph& g) {
        py::list out;
        for (const auto& v : validate(g)) {
          py::dict d;
          d["invariant"] = v.invariant;
          d["index"] = v.index;
          d["detail"] = v.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("graph"),
      "Structural invariant check; an empty list means well formed.");

  const auto lpa_wrapper = [](const Graph& g, double tolerance,
                              int max_iterations, const std::string& tie_break,
                              bool pruning, int chunk_size, int num_threads) {
    const LpaConfig cfg = make_config(tolerance, max_iterations, tie_break,
                                      pruning, chunk_size, num_threads);
    py::gil_scoped_release release;
    return lpa(g, cfg);
  };
  m.def("lpa", lpa_wrapper, py::arg("graph"), py::arg("tolerance") = 0.05,
        py::arg("max_iterations") = 20, py::arg("tie_break") = "strict",
        py::arg("pruning") = true, py::arg("chunk_size") = 2048,
        py::arg("num_threads") = 0,
        "Parallel label propagation; num_threads=0 uses all hardware "
        "threads.");
  m.def(
      "sequential_reference_lpa",
      [](const Graph& g, double tolerance, int max_iterations,
         const std::string& tie_break, bool pruning, int chunk_size,
         int num_threads) {
        const LpaConfig cfg = make_config(tolerance, max_iterations, tie_break,
                                          pruning, chunk_size, num_threads);
        py::gil_scoped_release release;
        return sequential_reference_lpa(g, cfg);
      },
      py::arg("graph"), py::arg("tolerance") = 0.05,
      py::arg("max_iterations") = 20, py::arg("tie_break") = "strict",
      py::arg("pruning") = true, py::arg("chunk_size") = 2048,
      py::arg("num_threads") = 0,
      "Single-threaded reference implementation (test oracle).");

  m.def("modularity", &modularity, py::arg("graph"), py::arg("labels"));
  m.def("modularity_oracle", &modularity_oracle, py::arg("graph"),
        py::arg("labels"),
        "Quadratic-time literal evaluation of the pairwise definition.");
  m.def("partition_stats", &partition_stats, py::arg("graph"),
        py::arg("labels"));

  const auto planted_pair = [](PlantedGraph&& p) {
    return py::make_tuple(std::move(p.graph), to_array(p.planted_labels));
  };
  m.def(
      "clique_ring",
      [planted_pair](VertexId cliques, VertexId clique_size) {
        return planted_pair(make_clique_ring(cliques, clique_size));
      },
      py::arg("cliques"), py::arg("clique_size"),
      "Returns (graph, planted_labels).");
  m.def(
      "barbell",
      [planted_pair](VertexId clique_size) {
        return planted_pair(make_barbell(clique_size));
      },
      py::arg("clique_size"), "Returns (graph, planted_labels).");
  m.def(
      "planted_partition",
      [planted_pair](VertexId num_vertices, VertexId num_blocks, double p_in,
                     double p_out, std::uint64_t seed) {
        return planted_pair(
            make_planted_partition(num_vertices, num_blocks, p_in, p_out, seed));
      },
      py::arg("num_vertices"), py::arg("num_blocks"), py::arg("p_in"),
      py::arg("p_out"), py::arg("seed") = 1,
      "Returns (graph, planted_labels); deterministic per seed.");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
