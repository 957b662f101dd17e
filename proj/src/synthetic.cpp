#include "labelprop/synthetic.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace labelprop {
namespace {

void add_undirected(std::vector<Arc>& arcs, VertexId u, VertexId v) {
  arcs.push_back({u, v, 1.0});
  if (u != v) arcs.push_back({v, u, 1.0});
}

void add_clique(std::vector<Arc>& arcs, VertexId first, VertexId size) {
  for (VertexId a = 0; a < size; ++a) {
    for (VertexId b = a + 1; b < size; ++b) {
      add_undirected(arcs, first + a, first + b);
    }
  }
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Number of indexes to skip before the next success when every index hits
/// independently with probability p in (0, 1). Geometric with support {0,...}.
std::uint64_t geometric_gap(std::mt19937_64& rng, double p) {
  const double u = uniform01(rng);
  const double gap = std::floor(std::log1p(-u) / std::log1p(-p));
  if (gap >= 1e18) return static_cast<std::uint64_t>(1e18);
  return static_cast<std::uint64_t>(gap);
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0) || p > 1.0) {
    throw ConfigError(std::string(name) + " must lie in [0, 1], got " +
                      std::to_string(p));
  }
}

}  // namespace

PlantedGraph make_clique_ring(VertexId num_cliques, VertexId clique_size) {
  if (num_cliques < 2) {
    throw ConfigError("clique ring needs at least 2 cliques, got " +
                      std::to_string(num_cliques));
  }
  if (clique_size < 2) {
    throw ConfigError("clique size must be at least 2, got " +
                      std::to_string(clique_size));
  }
  const VertexId n = num_cliques * clique_size;
  std::vector<Arc> arcs;
  PlantedGraph out;
  out.planted_labels.resize(n);
  for (VertexId c = 0; c < num_cliques; ++c) {
    const VertexId first = c * clique_size;
    add_clique(arcs, first, clique_size);
    for (VertexId v = 0; v < clique_size; ++v) {
      out.planted_labels[first + v] = c;
    }
  }
  // Ring bridges join the last vertex of consecutive cliques; two cliques
  // share a single bridge rather than a doubled one.
  const VertexId ring_edges = num_cliques == 2 ? 1 : num_cliques;
  for (VertexId c = 0; c < ring_edges; ++c) {
    const VertexId u = c * clique_size + clique_size - 1;
    const VertexId v = ((c + 1) % num_cliques) * clique_size + clique_size - 1;
    add_undirected(arcs, u, v);
  }
  out.graph = build_graph(n, arcs);
  return out;
}

PlantedGraph make_barbell(VertexId clique_size) {
  if (clique_size < 2) {
    throw ConfigError("clique size must be at least 2, got " +
                      std::to_string(clique_size));
  }
  const VertexId n = 2 * clique_size;
  std::vector<Arc> arcs;
  PlantedGraph out;
  out.planted_labels.resize(n);
  add_clique(arcs, 0, clique_size);
  add_clique(arcs, clique_size, clique_size);
  add_undirected(arcs, clique_size - 1, 2 * clique_size - 1);
  for (VertexId v = 0; v < n; ++v) {
    out.planted_labels[v] = v < clique_size ? 0 : 1;
  }
  out.graph = build_graph(n, arcs);
  return out;
}

PlantedGraph make_planted_partition(VertexId num_vertices, VertexId num_blocks,
                                    double p_in, double p_out,
                                    std::uint64_t seed) {
  if (num_vertices < 1) {
    throw ConfigError("planted partition needs at least 1 vertex");
  }
  if (num_blocks < 1 || num_blocks > num_vertices) {
    throw ConfigError("block count must lie in [1, num_vertices], got " +
                      std::to_string(num_blocks));
  }
  check_probability(p_in, "p_in");
  check_probability(p_out, "p_out");

  // Contiguous near-equal blocks: the first (n mod b) blocks get one extra
  // vertex.
  const VertexId base_size = num_vertices / num_blocks;
  const VertexId remainder = num_vertices % num_blocks;
  std::vector<VertexId> block_start(num_blocks + 1, 0);
  for (VertexId b = 0; b < num_blocks; ++b) {
    block_start[b + 1] = block_start[b] + base_size + (b < remainder ? 1 : 0);
  }

  PlantedGraph out;
  out.planted_labels.resize(num_vertices);
  for (VertexId b = 0; b < num_blocks; ++b) {
    for (VertexId v = block_start[b]; v < block_start[b + 1]; ++v) {
      out.planted_labels[v] = b;
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;

  // Within-block pairs: walk each row i and skip-sample the columns j > i.
  if (p_in > 0) {
    for (VertexId b = 0; b < num_blocks; ++b) {
      const VertexId lo = block_start[b];
      const VertexId hi = block_start[b + 1];
      for (VertexId i = lo; i + 1 < hi; ++i) {
        const std::uint64_t row_len = hi - i - 1;
        std::uint64_t t = 0;
        while (true) {
          t += p_in >= 1.0 ? 0 : geometric_gap(rng, p_in);
          if (t >= row_len) break;
          add_undirected(arcs, i, i + 1 + static_cast<VertexId>(t));
          ++t;
        }
      }
    }
  }

  // Cross-block pairs: skip-sample each block pair's bipartite index space.
  if (p_out > 0) {
    for (VertexId a = 0; a < num_blocks; ++a) {
      for (VertexId b = a + 1; b < num_blocks; ++b) {
        const std::uint64_t rows = block_start[a + 1] - block_start[a];
        const std::uint64_t cols = block_start[b + 1] - block_start[b];
        const std::uint64_t total = rows * cols;
        std::uint64_t t = 0;
        while (true) {
          t += p_out >= 1.0 ? 0 : geometric_gap(rng, p_out);
          if (t >= total) break;
          const VertexId i = block_start[a] + static_cast<VertexId>(t / cols);
          const VertexId j = block_start[b] + static_cast<VertexId>(t % cols);
          add_undirected(arcs, i, j);
          ++t;
        }
      }
    }
  }

  out.graph = build_graph(num_vertices, arcs);
  return out;
}

}  // namespace labelprop
