#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "revolver/graph.hpp"
#include "revolver/types.hpp"

namespace revolver {

// Deterministic generators used by the test suite and the benchmark CLI.
// All of them return graphs over dense ids [0, n).

// Two complete digraphs of `per_clique` vertices each (every ordered pair
// within a clique is an edge), joined by a single one-way bridge 0 -> p.
// The optimal 2-way cut is exactly that bridge edge.
inline Graph two_cliques(VertexId per_clique) {
  if (per_clique < 2) throw std::invalid_argument("two_cliques: need >= 2");
  const VertexId p = per_clique;
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(2ull * p * (p - 1) + 1);
  for (VertexId base : {VertexId{0}, p})
    for (VertexId i = 0; i < p; ++i)
      for (VertexId j = 0; j < p; ++j)
        if (i != j) edges.emplace_back(base + i, base + j);
  edges.emplace_back(0, p);
  return Graph::from_edges(2 * p, std::move(edges));
}

// Hub 0 with one out-edge to every other vertex.
inline Graph star(VertexId n) {
  if (n < 2) throw std::invalid_argument("star: need >= 2");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(n - 1);
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(n, std::move(edges));
}

// Preferential attachment: vertices m..n-1 arrive in order and each sends m
// out-edges to distinct earlier vertices, chosen proportionally to current
// (in+out) degree. Produces the heavy-tailed degree distributions the
// partitioners are benchmarked on. |E| = (n - m) * m.
inline Graph preferential_attachment(VertexId n, VertexId m,
                                     std::uint64_t seed) {
  if (m < 1 || n <= m) throw std::invalid_argument("preferential_attachment");
  Rng rng(mix_seed(seed));
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(n - m) * m);

  // One entry per edge endpoint; drawing uniformly from this list is
  // degree-proportional selection. Early vertices (degree 0) get one
  // bootstrap entry each so they are reachable at all.
  std::vector<VertexId> endpoints;
  endpoints.reserve(2ull * static_cast<std::size_t>(n - m) * m + m);
  for (VertexId v = 0; v < m; ++v) endpoints.push_back(v);

  std::vector<VertexId> picked;
  picked.reserve(m);
  for (VertexId v = m; v < n; ++v) {
    picked.clear();
    while (picked.size() < m) {
      VertexId t = endpoints[rng.next_below(
          static_cast<std::uint32_t>(endpoints.size()))];
      bool dup = false;
      for (VertexId q : picked) dup |= (q == t);
      if (!dup) picked.push_back(t);
    }
    for (VertexId t : picked) {
      edges.emplace_back(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

// Planted-partition model: `groups` blocks of `group_size` vertices; each
// ordered pair is an edge with probability p_in inside a block and p_out
// across blocks. The planted blocks are the ground-truth communities.
inline Graph planted_partition(std::uint32_t groups, VertexId group_size,
                               double p_in, double p_out, std::uint64_t seed) {
  if (groups < 1 || group_size < 1)
    throw std::invalid_argument("planted_partition");
  const VertexId n = groups * group_size;
  Rng rng(mix_seed(seed));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    const std::uint32_t gu = u / group_size;
    for (VertexId v = 0; v < n; ++v) {
      if (u == v) continue;
      const double p = (v / group_size == gu) ? p_in : p_out;
      if (rng.next_double() < p) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace revolver
