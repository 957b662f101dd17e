#pragma once
#include <cstdint>
#include <map>

#include "labelprop/graph.hpp"
#include "labelprop/lpa.hpp"

namespace labelprop {

/// Summary of a community assignment on a graph.
struct PartitionStats {
  std::uint64_t num_communities = 0;
  /// community size -> number of communities with that size
  std::map<std::uint64_t, std::uint64_t> size_histogram;
  double modularity = 0.0;
};

/// Modularity of an assignment, computed per community as
///   Q = sum_c [ sigma_c / 2m - (K_c / 2m)^2 ]
/// where sigma_c is the total weight of arcs with both endpoints in c
/// (each undirected intra-community edge counted in both directions),
/// K_c the total weighted degree of c's vertices, and 2m the graph's total
/// arc weight. Linear in arcs. Throws ValidationError when the assignment
/// size differs from N or contains labels outside [0, N), and QualityError
/// when the total weight is zero (the score is undefined).
double modularity(const Graph& g, const CommunityAssignment& labels);

/// Literal evaluation of the pairwise definition
///   Q = (1 / 2m) * sum_{i,j} [ A_ij - K_i K_j / 2m ] * [c_i == c_j]
/// over all ordered vertex pairs, with A the (multi-)adjacency weight.
/// Quadratic in N; written independently of modularity() to serve as its
/// test oracle. Same error contract.
double modularity_oracle(const Graph& g, const CommunityAssignment& labels);

/// Community count, size histogram, and modularity in one pass.
/// Same error contract as modularity().
PartitionStats partition_stats(const Graph& g, const CommunityAssignment& labels);

}  // namespace labelprop
