#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "revolver/edge_list.hpp"
#include "revolver/engine.hpp"
#include "revolver/report_io.hpp"

namespace revolver {

struct CliOptions {
  std::string input;
  std::string algorithm = "revolver";
  std::string degree_measure = "out";
  RunConfig config;
  std::int32_t runs = 1;
  std::string metrics_out;  // empty: report goes to stdout
  std::string trace_out;
  std::string idmap_out;
};

// Trace file path for one run of a multi-run batch: "t.csv" -> "t_run1.csv".
// Single-run batches use the requested path untouched.
inline std::string trace_path_for_run(const std::string& base, std::size_t i,
                                      std::int32_t runs) {
  if (runs <= 1) return base;
  const auto dot = base.find_last_of('.');
  const auto slash = base.find_last_of('/');
  const bool has_ext =
      dot != std::string::npos &&
      (slash == std::string::npos || dot > slash);
  const std::string tag = "_run" + std::to_string(i);
  if (!has_ext) return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  return out;
}

}  // namespace detail

// Everything after flag parsing: load, run, report. Throws on any error.
inline void execute(const CliOptions& opt_in) {
  CliOptions opt = opt_in;
  opt.config.algorithm = algorithm_from_string(opt.algorithm);
  opt.config.degree_measure = degree_measure_from_string(opt.degree_measure);
  opt.config.validate();
  if (opt.runs < 1) throw std::invalid_argument("--runs must be >= 1");

  if (opt.config.k > 1 && !opt.config.epsilon_mixing_ok())
    std::cerr << "warning: (k-1)*epsilon = "
              << static_cast<double>(opt.config.k - 1) * opt.config.epsilon
              << " < 1: capacities may be too tight for vertices to move"
                 " freely; proceeding anyway\n";

  const auto t0 = std::chrono::steady_clock::now();
  LoadedGraph lg = load_edge_list_file(opt.input);
  const GraphStats gs = compute_stats(lg.graph);
  std::cerr << "loaded " << opt.input << ": vertices=" << gs.num_vertices
            << " edges=" << gs.num_edges << " density=" << gs.density
            << " degree_skewness=" << gs.degree_skewness << " ("
            << std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - t0)
                   .count()
            << "s)\n";

  if (!opt.idmap_out.empty()) {
    auto out = detail::open_out(opt.idmap_out);
    write_id_map(out, lg.original_ids);
  }

  std::vector<RunResult> results;
  results.reserve(opt.runs);
  for (std::int32_t i = 0; i < opt.runs; ++i) {
    RunConfig cfg = opt.config;
    cfg.seed = opt.config.seed + static_cast<std::uint64_t>(i);
    RunResult r = run_algorithm(lg.graph, cfg);
    const PartitionMetrics m = compute_metrics(lg.graph, r.state);
    std::cerr << "run " << i << ": seed=" << cfg.seed << " steps=" << r.steps
              << (r.converged ? " converged" : " hit-max-steps")
              << " local_edges=" << m.local_edges
              << " max_normalized_load=" << m.max_normalized_load << " ("
              << r.wall_seconds << "s)\n";
    if (!opt.trace_out.empty()) {
      auto out = detail::open_out(trace_path_for_run(opt.trace_out, i, opt.runs));
      emit_trace(out, r.trace);
    }
    results.push_back(std::move(r));
  }

  const nlohmann::json report = make_report(lg.graph, opt.config, results);
  if (opt.metrics_out.empty()) {
    write_metrics(std::cout, report);
  } else {
    auto out = detail::open_out(opt.metrics_out);
    write_metrics(out, report);
  }
}

inline int run_cli(int argc, const char* const* argv) {
  CliOptions opt;
  CLI::App app{
      "balanced k-way graph partitioning: label propagation trained by"
      " per-vertex learning automata, with baselines"};
  app.add_option("input", opt.input,
                 "edge-list file, 'u v' per line; '#' comments and gzip are"
                 " fine")
      ->required();
  app.add_option("-a,--algorithm", opt.algorithm,
                 "partitioner: revolver, spinner, hash, or range")
      ->check(CLI::IsMember({"revolver", "spinner", "hash", "range"}))
      ->capture_default_str();
  app.add_option("-k,--partitions", opt.config.k, "number of partitions")
      ->capture_default_str();
  app.add_option("--epsilon", opt.config.epsilon,
                 "capacity slack: each partition holds at most"
                 " (1+epsilon)*total/k load")
      ->capture_default_str();
  app.add_option("--alpha", opt.config.alpha, "automata reward rate, (0,1]")
      ->capture_default_str();
  app.add_option("--beta", opt.config.beta, "automata penalty rate, [0,1]")
      ->capture_default_str();
  app.add_option("--max-steps", opt.config.max_steps,
                 "step budget per run")
      ->capture_default_str();
  app.add_option("--halt-window", opt.config.halt_window,
                 "halt after this many consecutive steps where the score "
                 "barely moves")
      ->capture_default_str();
  app.add_option("--theta", opt.config.theta,
                 "minimum per-step score change that counts as progress")
      ->capture_default_str();
  app.add_option("--seed", opt.config.seed, "base RNG seed; run i uses seed+i")
      ->capture_default_str();
  app.add_option("--workers", opt.config.workers, "worker thread count")
      ->capture_default_str();
  app.add_option("--runs", opt.runs, "independent runs to aggregate")
      ->capture_default_str();
  app.add_option("--degree-measure", opt.degree_measure,
                 "vertex load measure: out (out-degree) or merged"
                 " (reciprocity-weighted)")
      ->check(CLI::IsMember({"out", "merged"}))
      ->capture_default_str();
  app.add_option("--metrics-out", opt.metrics_out,
                 "write the JSON report here instead of stdout");
  app.add_option("--trace-out", opt.trace_out,
                 "write per-step CSV traces here (multi-run batches get"
                 " _runN suffixes)");
  app.add_option("--idmap-out", opt.idmap_out,
                 "write the dense-id to original-id mapping here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    execute(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace revolver
