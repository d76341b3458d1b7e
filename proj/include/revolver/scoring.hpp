#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "revolver/graph.hpp"
#include "revolver/partition.hpp"
#include "revolver/types.hpp"

namespace revolver {

// ---- neighborhood affinity ------------------------------------------------
// Share of v's merged-neighborhood weight held by each label: reciprocated
// neighbors count double, and the result sums to 1 over assigned neighbors.
// A vertex with no merged neighbors is indifferent: uniform 1/k.
//
// LabelOf is any callable VertexId -> PartitionId; the concurrent engine
// passes an atomic reader, everything else passes the label array.

template <class LabelOf>
  requires std::invocable<LabelOf&, VertexId>
void label_affinity_into(const Graph& g, LabelOf&& label_of, VertexId v,
                         std::int32_t k, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const std::int64_t denom = g.merged_weight_sum(v);
  if (denom == 0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(k));
    return;
  }
  auto nbrs = g.merged_neighbors(v);
  auto ws = g.merged_weights(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const PartitionId l = label_of(nbrs[i]);
    if (l >= 0) out[l] += static_cast<double>(ws[i]);
  }
  const double inv = 1.0 / static_cast<double>(denom);
  for (double& x : out) x *= inv;
}

inline void label_affinity_into(const Graph& g,
                                std::span<const PartitionId> labels,
                                VertexId v, std::int32_t k,
                                std::span<double> out) {
  label_affinity_into(g, [&](VertexId u) { return labels[u]; }, v, k, out);
}

inline std::vector<double> label_affinity(const Graph& g,
                                          std::span<const PartitionId> labels,
                                          VertexId v, std::int32_t k) {
  std::vector<double> out(k);
  label_affinity_into(g, labels, v, k, out);
  return out;
}

// Affinity for a single label; same semantics as the full vector.
template <class LabelOf>
  requires std::invocable<LabelOf&, VertexId>
double label_affinity_one(const Graph& g, LabelOf&& label_of, VertexId v,
                          std::int32_t k, PartitionId l) {
  const std::int64_t denom = g.merged_weight_sum(v);
  if (denom == 0) return 1.0 / static_cast<double>(k);
  auto nbrs = g.merged_neighbors(v);
  auto ws = g.merged_weights(v);
  std::int64_t hit = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    if (label_of(nbrs[i]) == l) hit += ws[i];
  return static_cast<double>(hit) / static_cast<double>(denom);
}

// ---- load penalty ----------------------------------------------------------
// Per-partition slack 1 - load/capacity, made non-negative by shifting when
// any partition is over capacity, then normalized to sum 1 so it is
// comparable with the affinity term. Degenerate inputs (zero capacity, or no
// slack anywhere) fall back to uniform.
inline void load_penalty_into(std::span<const std::int64_t> loads,
                              double capacity, std::span<double> out) {
  const double uniform = 1.0 / static_cast<double>(out.size());
  if (!(capacity > 0.0)) {
    std::fill(out.begin(), out.end(), uniform);
    return;
  }
  double min_v = 0.0, sum = 0.0;
  for (std::size_t l = 0; l < loads.size(); ++l) {
    out[l] = 1.0 - static_cast<double>(loads[l]) / capacity;
    min_v = std::min(min_v, out[l]);
  }
  for (double& x : out) {
    if (min_v < 0.0) x -= min_v;
    sum += x;
  }
  if (sum <= 0.0) {
    std::fill(out.begin(), out.end(), uniform);
    return;
  }
  for (double& x : out) x /= sum;
}

inline std::vector<double> load_penalty(std::span<const std::int64_t> loads,
                                        double capacity) {
  std::vector<double> out(loads.size());
  load_penalty_into(loads, capacity, out);
  return out;
}

// ---- combined scores -------------------------------------------------------
// Normalized score: mean of affinity and penalty; stays in [0,1] and sums to
// 1 across labels when all neighbors are assigned.
template <class LabelOf>
  requires std::invocable<LabelOf&, VertexId>
void normalized_score_into(const Graph& g, LabelOf&& label_of, VertexId v,
                           std::span<const double> penalty,
                           std::span<double> out) {
  label_affinity_into(g, std::forward<LabelOf>(label_of), v,
                      static_cast<std::int32_t>(out.size()), out);
  for (std::size_t l = 0; l < out.size(); ++l)
    out[l] = 0.5 * (out[l] + penalty[l]);
}

inline void normalized_score_into(const Graph& g,
                                  std::span<const PartitionId> labels,
                                  VertexId v, std::span<const double> penalty,
                                  std::span<double> out) {
  normalized_score_into(g, [&](VertexId u) { return labels[u]; }, v, penalty,
                        out);
}

// Additive variant used by the label-propagation baseline: affinity minus
// load/capacity. Unnormalized; can go negative when a partition is full.
inline void spinner_score_into(const Graph& g,
                               std::span<const PartitionId> labels, VertexId v,
                               std::span<const std::int64_t> loads,
                               double capacity, std::span<double> out) {
  label_affinity_into(g, labels, v, static_cast<std::int32_t>(out.size()),
                      out);
  for (std::size_t l = 0; l < out.size(); ++l)
    out[l] -= capacity > 0.0
                  ? static_cast<double>(loads[l]) / capacity
                  : 0.0;
}

// Highest-scoring label; exact ties keep the current label when it is one of
// the winners (avoids oscillation), otherwise the lowest index wins.
inline PartitionId argmax_label(std::span<const double> scores,
                                PartitionId current = -1) {
  PartitionId best = 0;
  for (std::size_t l = 1; l < scores.size(); ++l)
    if (scores[l] > scores[best]) best = static_cast<PartitionId>(l);
  if (current >= 0 && current < static_cast<PartitionId>(scores.size()) &&
      scores[current] == scores[best])
    return current;
  return best;
}

// ---- migration throttling --------------------------------------------------
// Probability that a vertex demanding space on a partition actually moves:
// remaining capacity over total demanded load, clamped to [0,1]. No demand
// means a free pass.
inline double migration_probability(double remaining, double demanded) {
  if (demanded <= 0.0) return 1.0;
  return std::clamp(remaining / demanded, 0.0, 1.0);
}

struct MigrationPlan {
  std::vector<double> remaining;    // capacity - load, per partition
  std::vector<double> probability;  // move-acceptance probability
};

inline MigrationPlan migration_probabilities(
    std::span<const std::int64_t> demanded,
    std::span<const std::int64_t> loads, double capacity) {
  if (demanded.size() != loads.size())
    throw std::invalid_argument("demand/load size mismatch");
  MigrationPlan plan;
  plan.remaining.resize(loads.size());
  plan.probability.resize(loads.size());
  for (std::size_t l = 0; l < loads.size(); ++l) {
    plan.remaining[l] = capacity - static_cast<double>(loads[l]);
    plan.probability[l] = migration_probability(
        plan.remaining[l], static_cast<double>(demanded[l]));
  }
  return plan;
}

// ---- whole-graph views -----------------------------------------------------

// Dense n x k table of normalized scores plus each vertex's best label,
// sharing one penalty vector (loads are frozen while it is built).
struct ScoreTable {
  std::int32_t k = 0;
  std::vector<double> scores;      // row-major, n rows of k
  std::vector<PartitionId> best;   // argmax per row, ties keep current
  std::vector<double> penalty;

  std::span<const double> row(VertexId v) const {
    return {scores.data() + static_cast<std::size_t>(v) * k,
            static_cast<std::size_t>(k)};
  }
};

inline ScoreTable compute_score_table(const Graph& g,
                                      const PartitionState& s) {
  ScoreTable t;
  t.k = s.k();
  t.penalty = load_penalty(s.loads(), s.capacity());
  t.scores.resize(static_cast<std::size_t>(g.num_vertices()) * t.k);
  t.best.resize(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::span<double> row{t.scores.data() + static_cast<std::size_t>(v) * t.k,
                          static_cast<std::size_t>(t.k)};
    normalized_score_into(g, s.labels(), v, t.penalty, row);
    t.best[v] = argmax_label(row, s.label(v));
  }
  return t;
}

// Mean normalized score of the labels actually assigned; in [0,1], equal to 1
// only when every vertex sits with all of its neighborhood weight and the
// penalty term is saturated. This is the quantity watched for convergence.
inline double global_score(const Graph& g, const PartitionState& s) {
  if (g.num_vertices() == 0) return 0.0;
  std::vector<double> penalty = load_penalty(s.loads(), s.capacity());
  auto labels = s.labels();
  double sum = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const PartitionId l = labels[v];
    if (l < 0) throw std::logic_error("global_score: unassigned vertex");
    const double aff = label_affinity_one(
        g, [&](VertexId u) { return labels[u]; }, v, s.k(), l);
    sum += 0.5 * (aff + penalty[l]);
  }
  return sum / static_cast<double>(g.num_vertices());
}

}  // namespace revolver
