#pragma once
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "labelprop/graph.hpp"

namespace labelprop {

/// Collision-free per-worker map from label id to accumulated weight.
///
/// Instead of a hash table this uses a full-size value array indexed directly
/// by label id plus a compact list of the labels currently live, so lookups
/// never collide and clearing costs only O(live labels). The live-label
/// counter sits in its own heap allocation, away from the two buffers, so
/// counters of different workers never share a cache line. Each worker owns
/// one instance exclusively; the type is not thread-safe by design.
///
/// Invariant: a label appears in keys() exactly once and iff its value is
/// positive. add() drops non-positive contributions to preserve this.
class LabelAccumulator {
 public:
  /// Create an accumulator able to hold labels in [0, capacity).
  explicit LabelAccumulator(VertexId capacity)
      : values_(capacity, 0.0),
        key_count_(std::make_unique<std::uint32_t>(0)) {}

  /// Add w to the total for `label`. Non-positive w is ignored.
  void add(VertexId label, Weight w) {
    if (!(w > 0)) return;
    if (values_[label] == 0) {
      keys_.push_back(label);
      ++*key_count_;
    }
    values_[label] += w;
  }

  /// Reset only the slots touched since the last clear().
  void clear() {
    for (VertexId label : keys_) values_[label] = 0;
    keys_.clear();
    *key_count_ = 0;
  }

  /// Live labels, in first-touch order.
  std::span<const VertexId> keys() const { return keys_; }

  /// Accumulated weight for a label (0 when not live).
  Weight value(VertexId label) const { return values_[label]; }

  std::uint32_t key_count() const { return *key_count_; }
  bool empty() const { return *key_count_ == 0; }

  /// Largest supported label + 1.
  VertexId capacity() const { return static_cast<VertexId>(values_.size()); }

 private:
  std::vector<VertexId> keys_;
  std::vector<Weight> values_;
  std::unique_ptr<std::uint32_t> key_count_;
};

}  // namespace labelprop
