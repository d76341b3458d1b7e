#pragma once

#include <cstdint>
#include <span>

#include "revolver/graph.hpp"
#include "revolver/partition.hpp"

namespace revolver {

// Partition quality summary.
//   local_edges: fraction of directed edges whose endpoints share a label.
//   edge_cuts: exact complement of local_edges.
//   max_normalized_load: heaviest partition relative to the perfect-balance
//     load total/k; 1.0 means perfectly balanced, (1+epsilon) is the cap the
//     partitioners aim to respect.
struct PartitionMetrics {
  double local_edges = 1.0;
  double edge_cuts = 0.0;
  std::uint64_t cut_edge_count = 0;
  double max_normalized_load = 0.0;
  std::int64_t max_load = 0;
};

inline PartitionMetrics compute_metrics(const Graph& g,
                                        const PartitionState& s) {
  PartitionMetrics m;
  auto labels = s.labels();

  std::uint64_t local = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    const PartitionId lu = labels[u];
    for (VertexId v : g.out_neighbors(u))
      if (lu >= 0 && labels[v] == lu) ++local;
  }
  if (g.num_edges() > 0) {
    m.local_edges =
        static_cast<double>(local) / static_cast<double>(g.num_edges());
    m.cut_edge_count = g.num_edges() - local;
    m.edge_cuts = 1.0 - m.local_edges;
  }

  for (std::int64_t b : s.loads()) m.max_load = std::max(m.max_load, b);
  if (s.total_load() > 0)
    m.max_normalized_load = static_cast<double>(m.max_load) *
                            static_cast<double>(s.k()) /
                            static_cast<double>(s.total_load());
  return m;
}

}  // namespace revolver
