#pragma once
#include <cstdint>

#include "labelprop/graph.hpp"
#include "labelprop/lpa.hpp"

namespace labelprop {

/// A generated graph together with the community structure built into it.
struct PlantedGraph {
  Graph graph;
  /// Planted community per vertex (block or clique index).
  CommunityAssignment planted_labels;
};

/// `num_cliques` cliques of `clique_size` vertices each, arranged in a ring:
/// the highest-numbered vertex of clique c is joined to the highest-numbered
/// vertex of clique (c+1) mod num_cliques by a single unit-weight edge. The
/// ring degenerates to one bridge edge when num_cliques == 2. All weights are
/// 1. Requires num_cliques >= 2 and clique_size >= 2 (throws ConfigError).
PlantedGraph make_clique_ring(VertexId num_cliques, VertexId clique_size);

/// Two cliques of `clique_size` vertices joined by a single unit-weight
/// bridge between the highest-numbered vertex of each clique. Requires
/// clique_size >= 2 (throws ConfigError).
PlantedGraph make_barbell(VertexId clique_size);

/// Planted-partition random graph: `num_vertices` vertices split into
/// `num_blocks` contiguous, near-equal blocks; each within-block vertex pair
/// is joined independently with probability p_in and each cross-block pair
/// with probability p_out (unit weights, no self-loops, no parallel edges).
/// Fully determined by the arguments: a given seed always produces the same
/// graph. Throws ConfigError for num_blocks outside [1, num_vertices] or
/// probabilities outside [0, 1].
PlantedGraph make_planted_partition(VertexId num_vertices, VertexId num_blocks,
                                    double p_in, double p_out,
                                    std::uint64_t seed);

}  // namespace labelprop
