#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "revolver/graph.hpp"
#include "revolver/types.hpp"

namespace revolver {

// Mutable k-way assignment over a fixed graph. Tracks one load value per
// partition, where a vertex contributes its degree-based load (see
// DegreeMeasure) to whichever partition currently holds it. Labels start
// unassigned (-1) and contribute no load until assigned.
//
// Invariant: loads()[l] == sum of vertex_load(v) over all v with label l.
class PartitionState {
 public:
  PartitionState(const Graph& g, std::int32_t k, double epsilon,
                 DegreeMeasure measure = DegreeMeasure::out_degree)
      : k_(k), epsilon_(epsilon), measure_(measure) {
    if (k < 1) throw std::invalid_argument("partition count must be >= 1");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    vertex_load_.resize(g.num_vertices());
    total_load_ = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      vertex_load_[v] = g.vertex_load(v, measure);
      total_load_ += vertex_load_[v];
    }
    capacity_ = (1.0 + epsilon) * static_cast<double>(total_load_) /
                static_cast<double>(k);
    labels_.assign(g.num_vertices(), -1);
    loads_.assign(k, 0);
  }

  std::int32_t k() const { return k_; }
  double epsilon() const { return epsilon_; }
  DegreeMeasure measure() const { return measure_; }
  std::int64_t total_load() const { return total_load_; }

  // Per-partition load ceiling: (1 + epsilon) * total_load / k.
  double capacity() const { return capacity_; }

  VertexId num_vertices() const {
    return static_cast<VertexId>(labels_.size());
  }

  std::span<const PartitionId> labels() const { return labels_; }
  PartitionId label(VertexId v) const { return labels_[v]; }
  std::span<const std::int64_t> loads() const { return loads_; }
  std::int64_t load(PartitionId l) const { return loads_[l]; }
  std::span<const std::int64_t> vertex_loads() const { return vertex_load_; }
  std::int64_t vertex_load(VertexId v) const { return vertex_load_[v]; }

  void assign(VertexId v, PartitionId l) {
    if (l < 0 || l >= k_) throw std::invalid_argument("label out of range");
    const PartitionId prev = labels_[v];
    if (prev == l) return;
    if (prev >= 0) loads_[prev] -= vertex_load_[v];
    loads_[l] += vertex_load_[v];
    labels_[v] = l;
  }

  void assign_all(std::span<const PartitionId> labels) {
    if (labels.size() != labels_.size())
      throw std::invalid_argument("label vector size mismatch");
    for (VertexId v = 0; v < labels.size(); ++v) assign(v, labels[v]);
  }

  bool fully_assigned() const {
    for (PartitionId l : labels_)
      if (l < 0) return false;
    return true;
  }

  // Raw pointers for the concurrent engine, which updates labels and loads
  // through std::atomic_ref while outside observers keep value semantics.
  PartitionId* mutable_labels() { return labels_.data(); }
  std::int64_t* mutable_loads() { return loads_.data(); }

 private:
  std::int32_t k_;
  double epsilon_;
  DegreeMeasure measure_;
  std::int64_t total_load_ = 0;
  double capacity_ = 0.0;
  std::vector<std::int64_t> vertex_load_;
  std::vector<PartitionId> labels_;
  std::vector<std::int64_t> loads_;
};

// Two-sided balance check: every partition load within
// [(1-epsilon), (1+epsilon)] * total/k.
inline bool within_balance(const PartitionState& s) {
  const double ideal =
      static_cast<double>(s.total_load()) / static_cast<double>(s.k());
  const double lo = (1.0 - s.epsilon()) * ideal;
  const double hi = (1.0 + s.epsilon()) * ideal;
  for (std::int64_t b : s.loads()) {
    const double bd = static_cast<double>(b);
    if (bd < lo || bd > hi) return false;
  }
  return true;
}

}  // namespace revolver
