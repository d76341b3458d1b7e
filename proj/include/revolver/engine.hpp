#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "revolver/automata.hpp"
#include "revolver/graph.hpp"
#include "revolver/metrics.hpp"
#include "revolver/partition.hpp"
#include "revolver/scoring.hpp"
#include "revolver/types.hpp"

namespace revolver {

enum class Algorithm : std::uint8_t { revolver, spinner, hash, range };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::revolver: return "revolver";
    case Algorithm::spinner: return "spinner";
    case Algorithm::hash: return "hash";
    case Algorithm::range: return "range";
  }
  return "?";
}

inline Algorithm algorithm_from_string(std::string_view s) {
  if (s == "revolver") return Algorithm::revolver;
  if (s == "spinner") return Algorithm::spinner;
  if (s == "hash") return Algorithm::hash;
  if (s == "range") return Algorithm::range;
  throw std::invalid_argument("unknown algorithm: " + std::string(s));
}

struct RunConfig {
  Algorithm algorithm = Algorithm::revolver;
  std::int32_t k = 2;
  double epsilon = 0.05;
  double alpha = 1.0;
  double beta = 0.1;
  std::int32_t max_steps = 290;
  std::int32_t halt_window = 5;
  double theta = 0.001;
  std::uint64_t seed = 0;
  std::int32_t workers = 1;
  DegreeMeasure degree_measure = DegreeMeasure::out_degree;

  void validate() const {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    if (!(alpha > 0.0) || alpha > 1.0)
      throw std::invalid_argument("alpha must be in (0, 1]");
    if (beta < 0.0 || beta > 1.0)
      throw std::invalid_argument("beta must be in [0, 1]");
    if (max_steps < 0) throw std::invalid_argument("max-steps must be >= 0");
    if (halt_window < 1)
      throw std::invalid_argument("halt-window must be >= 1");
    if (theta < 0.0) throw std::invalid_argument("theta must be >= 0");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  }

  // Capacity slack large enough that, in the worst case, every vertex can
  // leave a full partition for the k-1 others. Typical settings violate this
  // and work fine in practice; callers emit a warning rather than refuse.
  bool epsilon_mixing_ok() const {
    return static_cast<double>(k - 1) * epsilon >= 1.0;
  }
};

struct TraceRow {
  std::int32_t step = 0;
  double score = 0.0;                // mean normalized score, in [0,1]
  double local_edges = 0.0;
  double max_normalized_load = 0.0;
};

struct RunResult {
  PartitionState state;
  Algorithm algorithm = Algorithm::revolver;
  std::int32_t steps = 0;
  bool converged = false;  // halted by the stall window, not max_steps
  std::vector<TraceRow> trace;
  double wall_seconds = 0.0;
};

// Called after every completed step with the (quiescent) partition state.
using StepObserver =
    std::function<void(std::int32_t step, const PartitionState&)>;

namespace detail {

inline std::pair<VertexId, VertexId> chunk_bounds(VertexId n, int workers,
                                                  int w) {
  const std::uint64_t nn = n;
  return {static_cast<VertexId>(nn * w / workers),
          static_cast<VertexId>(nn * (w + 1) / workers)};
}

// Runs fn(0..workers-1); the single-worker case stays on the calling thread
// so that default runs are exactly reproducible and cheap to debug.
template <class Fn>
void run_workers(int workers, Fn&& fn) {
  if (workers == 1) {
    fn(0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&fn, w] { fn(w); });
  for (auto& t : threads) t.join();
}

// Per-worker scratch: an RNG stream plus k-sized buffers reused across
// vertices, so the hot loop never allocates.
struct WorkerSlot {
  Rng rng;
  std::vector<std::int64_t> loads_snap;
  std::vector<double> penalty, score, weights;
  std::vector<std::uint8_t> signals;

  WorkerSlot(std::uint64_t seed, std::int32_t k)
      : rng(seed),
        loads_snap(k),
        penalty(k),
        score(k),
        weights(k),
        signals(k) {}
};

inline std::uint64_t worker_seed(std::uint64_t base, int w) {
  return mix_seed(base ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(w + 1)));
}

template <class T>
T atomic_get(T* p) {
  return std::atomic_ref<T>(*p).load(std::memory_order_relaxed);
}
template <class T>
void atomic_put(T* p, T v) {
  std::atomic_ref<T>(*p).store(v, std::memory_order_relaxed);
}
template <class T>
T atomic_add(T* p, T d) {  // returns the post-add value
  return std::atomic_ref<T>(*p).fetch_add(d, std::memory_order_relaxed) + d;
}

// Shared step/trace/halt driver for the iterative partitioners. StepFn runs
// one whole step (all workers) and returns when the state is quiescent. The
// state is taken by reference because step closures alias it; it is moved
// into the result only after the last step.
template <class StepFn>
RunResult iterate(const Graph& g, PartitionState& state, Algorithm alg,
                  const RunConfig& cfg, const StepObserver& observer,
                  std::chrono::steady_clock::time_point t0, StepFn&& do_step) {
  std::vector<TraceRow> trace;
  trace.reserve(cfg.max_steps);
  bool converged = false;
  double prev = global_score(g, state);
  std::int32_t stall = 0;

  for (std::int32_t step = 1; step <= cfg.max_steps; ++step) {
    do_step();

    const double score = global_score(g, state);
    const PartitionMetrics pm = compute_metrics(g, state);
    trace.push_back({step, score, pm.local_edges, pm.max_normalized_load});
    if (observer) observer(step, state);

    // Halt once the score has failed to move by theta for halt_window
    // consecutive steps. The magnitude matters, not the sign: the automata
    // keep trialing candidate partitions, so mid-run scores wobble, and a
    // genuine stall is the score going flat.
    if (std::abs(score - prev) < cfg.theta) {
      if (++stall >= cfg.halt_window) {
        converged = true;
      }
    } else {
      stall = 0;
    }
    prev = score;
    if (converged) break;
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return RunResult{std::move(state), alg,
                   static_cast<std::int32_t>(trace.size()), converged,
                   std::move(trace), secs};
}

}  // namespace detail

// ---- one-shot baselines ------------------------------------------------

inline PartitionState hash_partition(const Graph& g, std::int32_t k,
                                     double epsilon = 0.05,
                                     DegreeMeasure measure =
                                         DegreeMeasure::out_degree) {
  PartitionState s(g, k, epsilon, measure);
  std::vector<PartitionId> labels(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    labels[v] = static_cast<PartitionId>(v % static_cast<VertexId>(k));
  s.assign_all(labels);
  return s;
}

inline PartitionState range_partition(const Graph& g, std::int32_t k,
                                      double epsilon = 0.05,
                                      DegreeMeasure measure =
                                          DegreeMeasure::out_degree) {
  PartitionState s(g, k, epsilon, measure);
  const std::uint64_t n = g.num_vertices();
  std::vector<PartitionId> labels(g.num_vertices());
  for (VertexId v = 0; v < n; ++v)
    labels[v] = static_cast<PartitionId>(
        static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(k) / n);
  s.assign_all(labels);
  return s;
}

// ---- learning-automata partitioner ---------------------------------------
//
// Asynchronous label propagation driven by one automaton per vertex. Each
// step, every vertex (in parallel chunks):
//   1. samples a candidate label from its automaton,
//   2. bids for space on that partition (demand counters throttle
//      over-subscribed targets),
//   3. computes normalized scores and publishes its current best label,
//   4. migrates with the acceptance probability from step 2,
//   5. scores its action against the neighborhood's published best labels
//      and reinforces its automaton accordingly.
// Workers read each other's labels and loads as they change; the only
// synchronization is atomic word access, so all counters stay exact while
// label views may be momentarily stale.
inline RunResult revolver_run(const Graph& g, const RunConfig& cfg,
                              const StepObserver& observer = {}) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const VertexId n = g.num_vertices();
  const std::int32_t k = cfg.k;
  const int workers = cfg.workers;

  PartitionState state(g, k, cfg.epsilon, cfg.degree_measure);
  AutomataNetwork net(n, k, cfg.alpha, cfg.beta);

  std::vector<detail::WorkerSlot> slots;
  slots.reserve(workers);
  for (int w = 0; w < workers; ++w)
    slots.emplace_back(detail::worker_seed(cfg.seed, w), k);

  // Initial assignment: one roulette draw per vertex from the (uniform)
  // automata, each chunk on its owner's stream. Done sequentially so the
  // result does not depend on thread scheduling.
  {
    std::vector<PartitionId> init(n);
    for (int w = 0; w < workers; ++w) {
      const auto [vb, ve] = detail::chunk_bounds(n, workers, w);
      for (VertexId v = vb; v < ve; ++v)
        init[v] = static_cast<PartitionId>(
            roulette_select(net.probabilities(v), slots[w].rng));
    }
    state.assign_all(init);
  }

  // Best-scoring label per vertex as last published by its owner; starts as
  // the initial assignment so neighbors always see something meaningful.
  std::vector<PartitionId> best(state.labels().begin(), state.labels().end());
  std::vector<std::int64_t> demand(k, 0);  // per-step migration demand

  PartitionId* labels = state.mutable_labels();
  std::int64_t* loads = state.mutable_loads();
  const std::int64_t* vloads = state.vertex_loads().data();
  PartitionId* best_p = best.data();
  std::int64_t* demand_p = demand.data();
  const double capacity = state.capacity();

  auto label_at = [labels](VertexId u) {
    return detail::atomic_get(labels + u);
  };

  auto step_chunk = [&, labels, loads, vloads, best_p, demand_p,
                     capacity](int w) {
    detail::WorkerSlot& sl = slots[w];
    const auto [vb, ve] = detail::chunk_bounds(n, workers, w);
    for (VertexId v = vb; v < ve; ++v) {
      std::span<double> p = net.probabilities(v);
      const PartitionId a =
          static_cast<PartitionId>(roulette_select(p, sl.rng));
      const PartitionId cur = detail::atomic_get(labels + v);
      const std::int64_t d = vloads[v];

      // Bid for the candidate partition. The acceptance probability is
      // remaining capacity over demand registered so far this step.
      double accept = 1.0;
      if (a != cur) {
        const std::int64_t demanded = detail::atomic_add(demand_p + a, d);
        const std::int64_t cand_load = detail::atomic_get(loads + a);
        accept = migration_probability(
            capacity - static_cast<double>(cand_load),
            static_cast<double>(demanded));
      }

      // Normalized scores against the live loads and labels; publish the
      // best label for neighbors to score against.
      for (std::int32_t l = 0; l < k; ++l)
        sl.loads_snap[l] = detail::atomic_get(loads + l);
      load_penalty_into(sl.loads_snap, capacity, sl.penalty);
      normalized_score_into(g, label_at, v, sl.penalty, sl.score);
      const PartitionId lam = argmax_label(sl.score, cur);
      detail::atomic_put(best_p + v, lam);

      if (a != cur && sl.rng.next_double() < accept) {
        detail::atomic_put(labels + v, a);
        std::atomic_ref<std::int64_t>(loads[cur])
            .fetch_sub(d, std::memory_order_relaxed);
        std::atomic_ref<std::int64_t>(loads[a])
            .fetch_add(d, std::memory_order_relaxed);
      }

      // Reinforcement weights: neighbors whose published best label matches
      // the automaton's pick endorse it with their merged edge weight;
      // everything else counts 1 toward its own best label, but only while
      // v's best partition can still accept load.
      const std::int64_t lam_load = detail::atomic_get(loads + lam);
      const bool endorse_others =
          migration_probability(capacity - static_cast<double>(lam_load),
                                static_cast<double>(detail::atomic_get(demand_p + lam))) > 0.0;

      auto nbrs = g.merged_neighbors(v);
      auto ws = g.merged_weights(v);
      std::fill(sl.weights.begin(), sl.weights.end(), 0.0);
      double wsum = 0.0;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const PartitionId lu = detail::atomic_get(best_p + nbrs[i]);
        if (lu < 0) continue;
        if (lu == a) {
          sl.weights[lu] += static_cast<double>(ws[i]);
          wsum += static_cast<double>(ws[i]);
        } else if (endorse_others) {
          sl.weights[lu] += 1.0;
          wsum += 1.0;
        }
      }
      if (wsum > 0.0 && build_signals_inplace(sl.weights, sl.signals))
        weighted_update(p, sl.signals, sl.weights, cfg.alpha, cfg.beta);
    }
  };

  return detail::iterate(g, state, Algorithm::revolver, cfg, observer, t0,
                         [&] {
                           std::fill(demand.begin(), demand.end(), 0);
                           detail::run_workers(workers, step_chunk);
                         });
}

// ---- synchronous label-propagation baseline --------------------------------
//
// Two-phase variant: every vertex scores against a frozen snapshot of labels
// and loads, then migrations are applied with a per-partition acceptance
// probability computed once from the total demand. Deterministic for any
// worker count because moves are applied sequentially.
inline RunResult spinner_run(const Graph& g, const RunConfig& cfg,
                             const StepObserver& observer = {}) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const VertexId n = g.num_vertices();
  const std::int32_t k = cfg.k;
  const int workers = cfg.workers;

  PartitionState state(g, k, cfg.epsilon, cfg.degree_measure);

  std::vector<detail::WorkerSlot> slots;
  slots.reserve(workers);
  for (int w = 0; w < workers; ++w)
    slots.emplace_back(detail::worker_seed(cfg.seed, w), k);

  {
    std::vector<PartitionId> init(n);
    for (int w = 0; w < workers; ++w) {
      const auto [vb, ve] = detail::chunk_bounds(n, workers, w);
      for (VertexId v = vb; v < ve; ++v)
        init[v] = static_cast<PartitionId>(
            slots[w].rng.next_below(static_cast<std::uint32_t>(k)));
    }
    state.assign_all(init);
  }

  std::vector<PartitionId> snapshot(n), candidate(n);
  std::vector<std::int64_t> frozen_loads(k), demand(k);
  std::int64_t* demand_p = demand.data();
  const double capacity = state.capacity();

  auto do_step = [&] {
    auto labels = state.labels();
    std::copy(labels.begin(), labels.end(), snapshot.begin());
    std::copy(state.loads().begin(), state.loads().end(),
              frozen_loads.begin());
    std::fill(demand.begin(), demand.end(), 0);

    detail::run_workers(workers, [&](int w) {
      detail::WorkerSlot& sl = slots[w];
      const auto [vb, ve] = detail::chunk_bounds(n, workers, w);
      for (VertexId v = vb; v < ve; ++v) {
        spinner_score_into(g, snapshot, v, frozen_loads, capacity, sl.score);
        const PartitionId cand = argmax_label(sl.score, snapshot[v]);
        candidate[v] = cand;
        if (cand != snapshot[v])
          detail::atomic_add(demand_p + cand, state.vertex_load(v));
      }
    });

    // Apply phase: acceptance probabilities from the frozen view, moves in
    // vertex order on the owning worker's stream.
    const MigrationPlan plan =
        migration_probabilities(demand, frozen_loads, capacity);
    for (int w = 0; w < workers; ++w) {
      const auto [vb, ve] = detail::chunk_bounds(n, workers, w);
      for (VertexId v = vb; v < ve; ++v) {
        if (candidate[v] == snapshot[v]) continue;
        if (slots[w].rng.next_double() < plan.probability[candidate[v]])
          state.assign(v, candidate[v]);
      }
    }
  };

  return detail::iterate(g, state, Algorithm::spinner, cfg, observer, t0,
                         do_step);
}

// One-shot baselines wrapped in the common result shape.
inline RunResult one_shot_run(const Graph& g, const RunConfig& cfg,
                              Algorithm alg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  PartitionState state =
      alg == Algorithm::hash
          ? hash_partition(g, cfg.k, cfg.epsilon, cfg.degree_measure)
          : range_partition(g, cfg.k, cfg.epsilon, cfg.degree_measure);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return RunResult{std::move(state), alg, 0, true, {}, secs};
}

inline RunResult run_algorithm(const Graph& g, const RunConfig& cfg,
                               const StepObserver& observer = {}) {
  switch (cfg.algorithm) {
    case Algorithm::revolver: return revolver_run(g, cfg, observer);
    case Algorithm::spinner: return spinner_run(g, cfg, observer);
    case Algorithm::hash:
    case Algorithm::range: return one_shot_run(g, cfg, cfg.algorithm);
  }
  throw std::logic_error("unreachable");
}

}  // namespace revolver
