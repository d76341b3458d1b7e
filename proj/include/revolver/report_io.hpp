#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "revolver/engine.hpp"
#include "revolver/graph.hpp"
#include "revolver/metrics.hpp"

namespace revolver {

inline const char* to_string(DegreeMeasure m) {
  return m == DegreeMeasure::out_degree ? "out" : "merged";
}

inline DegreeMeasure degree_measure_from_string(std::string_view s) {
  if (s == "out") return DegreeMeasure::out_degree;
  if (s == "merged") return DegreeMeasure::merged_weight;
  throw std::invalid_argument("unknown degree measure: " + std::string(s));
}

namespace detail {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

inline MeanStd mean_std(std::span<const double> xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - r.mean) * (x - r.mean);
  r.stddev = std::sqrt(var / static_cast<double>(xs.size()));
  return r;
}

inline nlohmann::json to_json(const MeanStd& m) {
  return {{"mean", m.mean}, {"stddev", m.stddev}};
}

}  // namespace detail

// Benchmark report: configuration, graph shape, one block per run, and
// mean/stddev aggregates. Contains nothing non-deterministic (no timestamps
// or wall times), so identical configurations produce identical bytes.
inline nlohmann::json make_report(const Graph& g, const RunConfig& cfg,
                                  std::span<const RunResult> runs) {
  const GraphStats gs = compute_stats(g);
  nlohmann::json report;
  report["algorithm"] = to_string(cfg.algorithm);
  report["config"] = {
      {"k", cfg.k},
      {"epsilon", cfg.epsilon},
      {"alpha", cfg.alpha},
      {"beta", cfg.beta},
      {"max_steps", cfg.max_steps},
      {"halt_window", cfg.halt_window},
      {"theta", cfg.theta},
      {"seed", cfg.seed},
      {"workers", cfg.workers},
      {"degree_measure", to_string(cfg.degree_measure)},
  };
  report["graph"] = {
      {"num_vertices", gs.num_vertices},
      {"num_edges", gs.num_edges},
      {"density", gs.density},
      {"mean_degree", gs.mean_degree},
      {"degree_skewness", gs.degree_skewness},
  };

  std::vector<double> local, cuts, maxload, steps, scores;
  nlohmann::json run_blocks = nlohmann::json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunResult& r = runs[i];
    const PartitionMetrics m = compute_metrics(g, r.state);
    const double score = global_score(g, r.state);
    run_blocks.push_back({
        {"seed", cfg.seed + i},
        {"steps", r.steps},
        {"converged", r.converged},
        {"score", score},
        {"local_edges", m.local_edges},
        {"edge_cuts", m.edge_cuts},
        {"cut_edge_count", m.cut_edge_count},
        {"max_normalized_load", m.max_normalized_load},
    });
    local.push_back(m.local_edges);
    cuts.push_back(m.edge_cuts);
    maxload.push_back(m.max_normalized_load);
    steps.push_back(static_cast<double>(r.steps));
    scores.push_back(score);
  }
  report["runs"] = std::move(run_blocks);
  report["summary"] = {
      {"runs", runs.size()},
      {"local_edges", detail::to_json(detail::mean_std(local))},
      {"edge_cuts", detail::to_json(detail::mean_std(cuts))},
      {"max_normalized_load", detail::to_json(detail::mean_std(maxload))},
      {"score", detail::to_json(detail::mean_std(scores))},
      {"steps", detail::to_json(detail::mean_std(steps))},
  };
  return report;
}

inline void write_metrics(std::ostream& out, const nlohmann::json& report) {
  out << report.dump(2) << '\n';
}

// Per-step convergence trace as CSV.
inline void emit_trace(std::ostream& out, std::span<const TraceRow> trace) {
  out << "step,score,local_edges,max_normalized_load\n";
  char buf[128];
  for (const TraceRow& row : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", row.step,
                  row.score, row.local_edges, row.max_normalized_load);
    out << buf;
  }
}

}  // namespace revolver
