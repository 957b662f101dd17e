#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "labelprop/accumulator.hpp"
#include "labelprop/graph.hpp"

namespace labelprop {

/// Community label per vertex, indexed by vertex id. Labels live in [0, N).
using CommunityAssignment = std::vector<VertexId>;

/// One byte per vertex; nonzero marks the vertex as unprocessed, i.e. it must
/// be rescanned in the next sweep.
using PruneFlags = std::vector<std::uint8_t>;

/// How to resolve ties between labels with equal accumulated weight.
enum class TieBreak {
  /// Pick the smallest label id among the maxima. Deterministic.
  Strict,
  /// Index the tied labels (in first-touch scan order) by the vertex's
  /// current label modulo the tie count. Cheaper, run-to-run stable only for
  /// a fixed scan order.
  NonStrict,
};

TieBreak tie_break_from_string(std::string_view name);  // throws ConfigError
std::string_view to_string(TieBreak mode);

/// Number of worker threads used when LpaConfig::num_threads is left at 0.
int default_num_threads();

/// Tuning knobs for the label propagation engine.
struct LpaConfig {
  /// Stop once the fraction of vertices that changed label in a sweep drops
  /// to this value or below. Must lie in [0, 1).
  double tolerance = 0.05;
  /// Hard cap on sweeps. Must be >= 1.
  int max_iterations = 20;
  TieBreak tie_break = TieBreak::Strict;
  /// Skip vertices whose neighborhood is unchanged since their last scan.
  bool pruning = true;
  /// Vertices handed to a worker at a time under dynamic scheduling.
  int chunk_size = 2048;
  /// Worker thread count; 0 means default_num_threads().
  int num_threads = 0;

  int effective_threads() const {
    return num_threads > 0 ? num_threads : default_num_threads();
  }

  /// Throws ConfigError when a field is out of range.
  void check() const;
};

/// Outcome of a label propagation run.
struct LpaResult {
  CommunityAssignment labels;
  /// Sweeps executed; equals delta_history.size().
  int iterations = 0;
  /// Number of vertices that changed label, per sweep.
  std::vector<std::uint64_t> delta_history;
  /// Wall-clock time of the run, in seconds.
  double wall_time_seconds = 0.0;
  /// True when the tolerance stop fired (always true for an empty graph).
  bool converged = false;
};

/// Accumulate, into `acc`, the total arc weight from vertex i to each
/// neighboring community under `labels`. Self-loops are skipped: a vertex
/// never votes for its own community through itself. `acc` must be cleared
/// by the caller and have capacity >= the graph's vertex count.
void scan_communities(LabelAccumulator& acc, const Graph& g,
                      const CommunityAssignment& labels, VertexId i);

/// Pick the label with the greatest accumulated weight, resolving ties per
/// `mode`. Returns `current` when the accumulator is empty.
VertexId choose_best_label(const LabelAccumulator& acc, VertexId current,
                           TieBreak mode);

/// Asynchronous parallel label propagation.
///
/// Workers sweep the vertex set in dynamically scheduled chunks, read the
/// newest labels their neighbors hold (in-place updates, no per-sweep double
/// buffer), and move each vertex to the community holding the plurality of
/// its incident weight. A sweep counts its label changes with a per-worker
/// reduction; the run stops when that count, as a fraction of N, drops to
/// the configured tolerance or the sweep cap is hit.
class LpaEngine {
 public:
  explicit LpaEngine(LpaConfig config = {});
  ~LpaEngine();
  LpaEngine(LpaEngine&&) noexcept;
  LpaEngine& operator=(LpaEngine&&) noexcept;

  /// Run to convergence from the identity assignment (every vertex its own
  /// community).
  LpaResult run(const Graph& g);

  /// One sweep over `labels`. Vertices whose flag byte is zero are skipped
  /// when pruning is enabled; a vertex that changes label re-flags its
  /// neighbors (except itself). Returns the number of vertices that changed.
  /// Both vectors must be sized to the graph's vertex count.
  std::uint64_t move(const Graph& g, CommunityAssignment& labels,
                     PruneFlags& flags);

  const LpaConfig& config() const { return config_; }

 private:
  void ensure_capacity(VertexId n);

  LpaConfig config_;
  /// One accumulator per worker, each a separate heap object so workers
  /// never write into a shared allocation.
  std::vector<std::unique_ptr<LabelAccumulator>> accumulators_;
};

/// Convenience wrapper: construct an engine and run it.
LpaResult lpa(const Graph& g, const LpaConfig& config = {});

/// Convenience wrapper for a single sweep with a throwaway engine.
std::uint64_t lpa_move(const Graph& g, CommunityAssignment& labels,
                       PruneFlags& flags, const LpaConfig& config = {});

/// Independent single-threaded reference implementation used as a test
/// oracle. Sweeps vertices in ascending id order and accumulates
/// label weights in a flat association list, sharing no code with LpaEngine.
LpaResult sequential_reference_lpa(const Graph& g, const LpaConfig& config = {});

}  // namespace labelprop
