#include "labelprop/quality.hpp"

#include <string>
#include <vector>

namespace labelprop {
namespace {

void check_assignment(const Graph& g, const CommunityAssignment& labels) {
  const VertexId n = g.num_vertices();
  if (labels.size() != n) {
    throw ValidationError("assignment holds " + std::to_string(labels.size()) +
                          " labels for " + std::to_string(n) + " vertices");
  }
  for (VertexId v = 0; v < n; ++v) {
    if (labels[v] >= n) {
      throw ValidationError("vertex " + std::to_string(v) + " carries label " +
                            std::to_string(labels[v]) + " outside [0, " +
                            std::to_string(n) + ")");
    }
  }
}

double checked_total_weight(const Graph& g) {
  if (!(g.total_weight_2m > 0)) {
    throw QualityError(
        "modularity is undefined: the graph's total edge weight is zero");
  }
  return g.total_weight_2m;
}

}  // namespace

double modularity(const Graph& g, const CommunityAssignment& labels) {
  check_assignment(g, labels);
  const double two_m = checked_total_weight(g);
  const VertexId n = g.num_vertices();

  // sigma[c]: arc weight inside community c (intra-community edges counted in
  // both directions, self-loops once per stored arc).
  // total[c]: summed weighted degree of c's members.
  std::vector<double> sigma(n, 0.0);
  std::vector<double> total(n, 0.0);
  for (VertexId i = 0; i < n; ++i) {
    const VertexId c = labels[i];
    total[c] += g.weighted_degrees[i];
    for (EdgeId k = g.offsets[i]; k < g.offsets[i + 1]; ++k) {
      if (labels[g.targets[k]] == c) sigma[c] += g.weights[k];
    }
  }

  double q = 0.0;
  for (VertexId c = 0; c < n; ++c) {
    if (total[c] == 0) continue;  // empty or isolated-only community
    const double share = total[c] / two_m;
    q += sigma[c] / two_m - share * share;
  }
  return q;
}

double modularity_oracle(const Graph& g, const CommunityAssignment& labels) {
  check_assignment(g, labels);
  const double two_m = checked_total_weight(g);
  const VertexId n = g.num_vertices();

  double q = 0.0;
  // Dense adjacency row for the current i; parallel arcs sum into one entry.
  std::vector<double> row(n, 0.0);
  for (VertexId i = 0; i < n; ++i) {
    for (EdgeId k = g.offsets[i]; k < g.offsets[i + 1]; ++k) {
      row[g.targets[k]] += g.weights[k];
    }
    for (VertexId j = 0; j < n; ++j) {
      if (labels[i] != labels[j]) continue;
      q += row[j] - g.weighted_degrees[i] * g.weighted_degrees[j] / two_m;
    }
    for (EdgeId k = g.offsets[i]; k < g.offsets[i + 1]; ++k) {
      row[g.targets[k]] = 0.0;
    }
  }
  return q / two_m;
}

PartitionStats partition_stats(const Graph& g,
                               const CommunityAssignment& labels) {
  check_assignment(g, labels);
  const VertexId n = g.num_vertices();

  std::vector<std::uint64_t> members(n, 0);
  for (VertexId v = 0; v < n; ++v) ++members[labels[v]];

  PartitionStats stats;
  for (VertexId c = 0; c < n; ++c) {
    if (members[c] == 0) continue;
    ++stats.num_communities;
    ++stats.size_histogram[members[c]];
  }
  stats.modularity = modularity(g, labels);
  return stats;
}

}  // namespace labelprop
