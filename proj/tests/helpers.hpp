#pragma once
// Shared builders for the test suites: small hand graphs, seeded random
// graphs, and partition comparison up to label renaming.
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/lpa.hpp"

namespace testutil {

using labelprop::Arc;
using labelprop::CommunityAssignment;
using labelprop::Graph;
using labelprop::VertexId;
using labelprop::Weight;

/// Build a graph from undirected weighted edges (reverse arcs added).
inline Graph graph_from_edges(
    VertexId n,
    const std::vector<std::tuple<VertexId, VertexId, Weight>>& edges) {
  std::vector<Arc> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v, w] : edges) {
    arcs.push_back({u, v, w});
    if (u != v) arcs.push_back({v, u, w});
  }
  return labelprop::build_graph(n, arcs);
}

/// Build a unit-weight graph from undirected edges.
inline Graph unit_graph(VertexId n,
                        const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::vector<std::tuple<VertexId, VertexId, Weight>> weighted;
  weighted.reserve(edges.size());
  for (const auto& [u, v] : edges) weighted.emplace_back(u, v, 1.0);
  return graph_from_edges(n, weighted);
}

inline Graph triangle() { return unit_graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

inline Graph two_triangles_bridge() {
  return unit_graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 5}});
}

inline Graph star5() {
  return unit_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

inline Graph path3() { return unit_graph(3, {{0, 1}, {1, 2}}); }

struct RandomGraphOptions {
  VertexId min_n = 2;
  VertexId max_n = 200;
  bool weighted = false;
  bool self_loops = true;
  bool anchor_last_vertex = false;  ///< guarantee the top id has an arc
};

/// Seeded random multigraph: up to 4N undirected edges drawn uniformly, with
/// optional self-loops and non-unit weights. Duplicates are kept as parallel
/// edges and some vertices usually stay isolated.
inline Graph random_graph(std::mt19937& rng, const RandomGraphOptions& opt = {}) {
  std::uniform_int_distribution<VertexId> pick_n(opt.min_n, opt.max_n);
  const VertexId n = pick_n(rng);
  std::uniform_int_distribution<VertexId> pick_v(0, n - 1);
  std::uniform_int_distribution<std::uint32_t> pick_e(0, 4 * n);
  std::uniform_real_distribution<double> pick_w(0.5, 2.0);
  const std::uint32_t num_edges = pick_e(rng);

  std::vector<std::tuple<VertexId, VertexId, Weight>> edges;
  edges.reserve(num_edges + 1);
  for (std::uint32_t e = 0; e < num_edges; ++e) {
    VertexId u = pick_v(rng);
    VertexId v = pick_v(rng);
    if (!opt.self_loops) {
      while (u == v) v = pick_v(rng);
    }
    const Weight w = opt.weighted ? pick_w(rng) : 1.0;
    edges.emplace_back(u, v, w);
  }
  if (opt.anchor_last_vertex) {
    edges.emplace_back(n - 1, pick_v(rng),
                       opt.weighted ? pick_w(rng) : 1.0);
  }
  return graph_from_edges(n, edges);
}

/// Labels drawn uniformly from [0, n).
inline CommunityAssignment random_assignment(std::mt19937& rng, VertexId n) {
  std::uniform_int_distribution<VertexId> pick(0, n - 1);
  CommunityAssignment labels(n);
  for (VertexId v = 0; v < n; ++v) labels[v] = pick(rng);
  return labels;
}

/// True when the two assignments induce the same partition, i.e. they are
/// equal up to a bijective renaming of labels.
inline bool partitions_match(const CommunityAssignment& a,
                             const CommunityAssignment& b) {
  if (a.size() != b.size()) return false;
  const VertexId kUnset = static_cast<VertexId>(-1);
  std::vector<VertexId> a_to_b(a.size(), kUnset);
  std::vector<VertexId> b_to_a(b.size(), kUnset);
  for (std::size_t v = 0; v < a.size(); ++v) {
    VertexId& fwd = a_to_b[a[v]];
    VertexId& rev = b_to_a[b[v]];
    if (fwd == kUnset) fwd = b[v];
    if (rev == kUnset) rev = a[v];
    if (fwd != b[v] || rev != a[v]) return false;
  }
  return true;
}

}  // namespace testutil
