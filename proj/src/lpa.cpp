#include "labelprop/lpa.hpp"

#include <omp.h>

#include <cassert>
#include <chrono>
#include <limits>
#include <numeric>
#include <thread>
#include <utility>

namespace labelprop {

TieBreak tie_break_from_string(std::string_view name) {
  if (name == "strict") return TieBreak::Strict;
  if (name == "nonstrict") return TieBreak::NonStrict;
  throw ConfigError("unknown tie-break mode '" + std::string(name) +
                    "' (expected 'strict' or 'nonstrict')");
}

std::string_view to_string(TieBreak mode) {
  return mode == TieBreak::Strict ? "strict" : "nonstrict";
}

int default_num_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void LpaConfig::check() const {
  if (!(tolerance >= 0.0) || tolerance >= 1.0) {
    throw ConfigError("tolerance must lie in [0, 1), got " +
                      std::to_string(tolerance));
  }
  if (max_iterations < 1) {
    throw ConfigError("max_iterations must be at least 1, got " +
                      std::to_string(max_iterations));
  }
  if (chunk_size < 1) {
    throw ConfigError("chunk_size must be at least 1, got " +
                      std::to_string(chunk_size));
  }
  if (num_threads < 0) {
    throw ConfigError("num_threads must be non-negative, got " +
                      std::to_string(num_threads));
  }
}

void scan_communities(LabelAccumulator& acc, const Graph& g,
                      const CommunityAssignment& labels, VertexId i) {
  const EdgeId begin = g.offsets[i];
  const EdgeId end = g.offsets[i + 1];
  for (EdgeId k = begin; k < end; ++k) {
    const VertexId j = g.targets[k];
    if (j == i) continue;  // a self-loop casts no vote
    acc.add(labels[j], g.weights[k]);
  }
}

VertexId choose_best_label(const LabelAccumulator& acc, VertexId current,
                           TieBreak mode) {
  const std::span<const VertexId> keys = acc.keys();
  if (keys.empty()) return current;

  Weight best_weight = 0.0;
  for (VertexId label : keys) {
    const Weight w = acc.value(label);
    if (w > best_weight) best_weight = w;
  }

  if (mode == TieBreak::Strict) {
    VertexId best = std::numeric_limits<VertexId>::max();
    for (VertexId label : keys) {
      if (acc.value(label) == best_weight && label < best) best = label;
    }
    return best;
  }

  // Non-strict: treat the tied labels, in first-touch order, as a list and
  // index it by the vertex's current label.
  std::uint32_t ties = 0;
  for (VertexId label : keys) {
    if (acc.value(label) == best_weight) ++ties;
  }
  std::uint32_t wanted = current % ties;
  for (VertexId label : keys) {
    if (acc.value(label) != best_weight) continue;
    if (wanted == 0) return label;
    --wanted;
  }
  return current;  // unreachable: ties >= 1
}

LpaEngine::LpaEngine(LpaConfig config) : config_(config) { config_.check(); }
LpaEngine::~LpaEngine() = default;
LpaEngine::LpaEngine(LpaEngine&&) noexcept = default;
LpaEngine& LpaEngine::operator=(LpaEngine&&) noexcept = default;

void LpaEngine::ensure_capacity(VertexId n) {
  const std::size_t workers = static_cast<std::size_t>(config_.effective_threads());
  if (accumulators_.size() > workers) accumulators_.resize(workers);
  while (accumulators_.size() < workers) accumulators_.push_back(nullptr);
  for (auto& acc : accumulators_) {
    if (!acc || acc->capacity() < n) {
      acc = std::make_unique<LabelAccumulator>(n);
    }
  }
}

std::uint64_t LpaEngine::move(const Graph& g, CommunityAssignment& labels,
                              PruneFlags& flags) {
  const VertexId n = g.num_vertices();
  if (labels.size() != n || flags.size() != n) {
    throw ValidationError(
        "labels and flags must both be sized to the vertex count");
  }
  ensure_capacity(n);

  const bool pruning = config_.pruning;
  const int chunk = config_.chunk_size;
  std::uint64_t delta = 0;
#ifndef NDEBUG
  // In debug builds, count per-vertex visits: a sweep must scan each vertex
  // at most once regardless of how chunks land on workers.
  std::vector<std::uint8_t> visits(n, 0);
#endif

  // Labels are read and written in place: a worker sees whatever mix of old
  // and new labels its neighbors hold at scan time. Loads and stores of one
  // label are single aligned machine words, so a torn value is impossible
  // and any interleaving observed is one some sequential order could also
  // produce. The change counter is combined through the reduction, never
  // through a shared atomic.
#pragma omp parallel num_threads(config_.effective_threads())
  {
    LabelAccumulator& acc =
        *accumulators_[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, chunk) reduction(+ : delta)
    for (VertexId i = 0; i < n; ++i) {
      if (pruning) {
        if (!flags[i]) continue;
        flags[i] = 0;
      }
#ifndef NDEBUG
      ++visits[i];
#endif
      acc.clear();
      scan_communities(acc, g, labels, i);
      const VertexId current = labels[i];
      const VertexId best = choose_best_label(acc, current, config_.tie_break);
      if (best == current) continue;
      labels[i] = best;
      ++delta;
      if (pruning) {
        for (VertexId j : g.neighbors(i)) {
          if (j != i) flags[j] = 1;
        }
      }
    }
  }

#ifndef NDEBUG
  for (VertexId i = 0; i < n; ++i) assert(visits[i] <= 1);
#endif
  return delta;
}

LpaResult LpaEngine::run(const Graph& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const VertexId n = g.num_vertices();

  LpaResult result;
  result.labels.resize(n);
  std::iota(result.labels.begin(), result.labels.end(), VertexId{0});
  PruneFlags flags(n, 1);  // every vertex starts unprocessed

  if (n == 0) {
    result.converged = true;
  } else {
    for (int sweep = 0; sweep < config_.max_iterations; ++sweep) {
      const std::uint64_t delta = move(g, result.labels, flags);
      result.delta_history.push_back(delta);
      ++result.iterations;
      if (static_cast<double>(delta) / static_cast<double>(n) <=
          config_.tolerance) {
        result.converged = true;
        break;
      }
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

LpaResult lpa(const Graph& g, const LpaConfig& config) {
  return LpaEngine(config).run(g);
}

std::uint64_t lpa_move(const Graph& g, CommunityAssignment& labels,
                       PruneFlags& flags, const LpaConfig& config) {
  return LpaEngine(config).move(g, labels, flags);
}

LpaResult sequential_reference_lpa(const Graph& g, const LpaConfig& config) {
  config.check();
  const auto t0 = std::chrono::steady_clock::now();
  const VertexId n = g.num_vertices();

  LpaResult result;
  result.labels.resize(n);
  std::iota(result.labels.begin(), result.labels.end(), VertexId{0});
  PruneFlags flags(n, 1);

  // Flat association list in first-touch order; deliberately shares nothing
  // with LabelAccumulator or choose_best_label so it can serve as an oracle.
  std::vector<std::pair<VertexId, Weight>> weight_by_label;

  auto scan = [&](VertexId i) {
    weight_by_label.clear();
    for (EdgeId k = g.offsets[i]; k < g.offsets[i + 1]; ++k) {
      const VertexId j = g.targets[k];
      if (j == i) continue;
      const Weight w = g.weights[k];
      if (!(w > 0)) continue;
      const VertexId label = result.labels[j];
      bool found = false;
      for (auto& entry : weight_by_label) {
        if (entry.first == label) {
          entry.second += w;
          found = true;
          break;
        }
      }
      if (!found) weight_by_label.emplace_back(label, w);
    }
  };

  auto choose = [&](VertexId current) -> VertexId {
    if (weight_by_label.empty()) return current;
    Weight best_weight = 0.0;
    for (const auto& entry : weight_by_label) {
      if (entry.second > best_weight) best_weight = entry.second;
    }
    if (config.tie_break == TieBreak::Strict) {
      VertexId best = std::numeric_limits<VertexId>::max();
      for (const auto& entry : weight_by_label) {
        if (entry.second == best_weight && entry.first < best) {
          best = entry.first;
        }
      }
      return best;
    }
    std::uint32_t ties = 0;
    for (const auto& entry : weight_by_label) {
      if (entry.second == best_weight) ++ties;
    }
    std::uint32_t wanted = current % ties;
    for (const auto& entry : weight_by_label) {
      if (entry.second != best_weight) continue;
      if (wanted == 0) return entry.first;
      --wanted;
    }
    return current;
  };

  if (n == 0) {
    result.converged = true;
  } else {
    for (int sweep = 0; sweep < config.max_iterations; ++sweep) {
      std::uint64_t delta = 0;
      for (VertexId i = 0; i < n; ++i) {
        if (config.pruning) {
          if (!flags[i]) continue;
          flags[i] = 0;
        }
        scan(i);
        const VertexId best = choose(result.labels[i]);
        if (best == result.labels[i]) continue;
        result.labels[i] = best;
        ++delta;
        if (config.pruning) {
          for (VertexId j : g.neighbors(i)) {
            if (j != i) flags[j] = 1;
          }
        }
      }
      result.delta_history.push_back(delta);
      ++result.iterations;
      if (static_cast<double>(delta) / static_cast<double>(n) <=
          config.tolerance) {
        result.converged = true;
        break;
      }
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

}  // namespace labelprop
