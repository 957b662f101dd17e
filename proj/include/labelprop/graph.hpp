#pragma once
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "labelprop/errors.hpp"

namespace labelprop {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;
using Weight = double;

/// One directed arc with a non-negative weight.
struct Arc {
  VertexId source;
  VertexId target;
  Weight weight;
};

/// Immutable undirected weighted graph in Compressed Sparse Row form.
///
/// Every undirected edge {u, v} is stored as the two arcs (u, v) and (v, u)
/// with equal weight; a self-loop is stored once. Parallel edges are kept as
/// parallel arcs. Arc order within a vertex's range follows input order, so
/// identical inputs reproduce identical arrays.
struct Graph {
  /// Arc range boundaries per vertex; size num_vertices() + 1, offsets[0] == 0.
  std::vector<EdgeId> offsets{0};
  /// Arc target vertices, grouped by source.
  std::vector<VertexId> targets;
  /// Arc weights, parallel to targets.
  std::vector<Weight> weights;
  /// Cached per-vertex weighted degree: sum of arc weights leaving the vertex.
  std::vector<Weight> weighted_degrees;
  /// Cached sum of all arc weights (2m for a symmetric graph).
  Weight total_weight_2m = 0.0;

  VertexId num_vertices() const {
    return static_cast<VertexId>(offsets.size() - 1);
  }
  /// Directed arc count; each undirected non-loop edge contributes two arcs.
  EdgeId num_arcs() const { return static_cast<EdgeId>(targets.size()); }

  /// Number of arcs leaving vertex v.
  EdgeId degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  std::span<const Weight> arc_weights(VertexId v) const {
    return {weights.data() + offsets[v], weights.data() + offsets[v + 1]};
  }
};

/// One failed structural invariant found by validate().
struct Violation {
  std::string invariant;  ///< Which invariant failed (e.g. "symmetry").
  std::uint64_t index;    ///< Offending arc or vertex index.
  std::string detail;     ///< Human-readable description.
};

/// Options for load_edge_list().
struct EdgeListOptions {
  bool weighted = false;     ///< Read a third column as the edge weight.
  bool one_indexed = false;  ///< Vertex ids in the file start at 1.
  bool symmetrize = true;    ///< Add the reverse of every non-loop arc.
};

/// Assemble a CSR graph from an arc list. Arc order is preserved within each
/// vertex's range (stable counting sort by source). Throws BoundsError for
/// endpoints >= num_vertices and ValidationError for negative or non-finite
/// weights.
Graph build_graph(VertexId num_vertices, std::span<const Arc> arcs);

/// Parse whitespace-separated "u v [w]" lines. Blank lines and lines starting
/// with '#' or '%' are skipped. The vertex count is inferred as 1 + the
/// largest id seen. Weights default to 1.0 when absent or when options.weighted
/// is false. Malformed lines raise ParseError with the line number.
Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list_file(const std::string& path,
                          const EdgeListOptions& options = {});

/// Parse a MatrixMarket coordinate file. Supported fields: pattern, real,
/// integer; supported symmetries: general, symmetric. Symmetric inputs are
/// expanded (off-diagonal entries gain their mirror arc) and general inputs
/// are symmetrized the same way, without deduplication. The vertex count is
/// max(rows, cols). Array format, complex/hermitian/skew fields, and entry
/// counts that disagree with the header are rejected.
Graph load_matrix_market(std::istream& in);
Graph load_matrix_market_file(const std::string& path);

/// Write one "u v w" line per stored arc, in CSR order, with weights printed
/// at round-trip precision. Reloading with {weighted, zero-indexed,
/// no symmetrize} reproduces the same arc multiset per vertex as long as the
/// highest-numbered vertex has at least one arc.
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

/// Write a MatrixMarket coordinate file with symmetric storage: one entry per
/// arc with source >= target (lower triangle plus diagonal). Requires the
/// symmetric arc layout Graph guarantees. Graphs whose weights are all 1.0
/// are written as "pattern", others as "real". Output is deterministic: equal
/// graphs serialize to identical bytes.
void write_matrix_market(const Graph& g, std::ostream& out);
void write_matrix_market_file(const Graph& g, const std::string& path);

/// Binary CSR snapshot. Layout (all little-endian, packed in this order):
///   bytes 0-7   magic "LPCSRBIN"
///   u32         version (currently 1)
///   u64         num_vertices N
///   u64         num_arcs M
///   u64 x (N+1) offsets
///   u32 x M     targets
///   f64 x M     weights
/// Loading recomputes the cached degree fields, which reproduces them
/// bit-exactly because summation order is part of the format.
void save_csr_binary(const Graph& g, std::ostream& out);
void save_csr_binary_file(const Graph& g, const std::string& path);
Graph load_csr_binary(std::istream& in);
Graph load_csr_binary_file(const std::string& path);

/// Check structural invariants: offset monotonicity and bounds, target
/// ranges, weight sign/finiteness, cached degree and total-weight fields,
/// and arc symmetry (the multiset of (u, v, w) equals its transpose).
/// Returns an empty vector when the graph is well formed.
std::vector<Violation> validate(const Graph& g);

}  // namespace labelprop
