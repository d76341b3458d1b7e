#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "revolver/types.hpp"

namespace revolver {

// Immutable directed graph in CSR form, plus a "merged" view that folds the
// two directions together: neighbors(v) under the merged view is the union of
// out- and in-neighbors, and each merged edge carries weight 2 when the edge
// exists in both directions, 1 otherwise. Partitioning scores run on the
// merged view; |E| and cut metrics are counted on directed edges.
class Graph {
 public:
  Graph() = default;

  // Builds from a directed edge list. Self-loops are dropped and duplicate
  // directed edges collapsed, so callers may pass raw lists. All endpoints
  // must be < num_vertices.
  static Graph from_edges(VertexId num_vertices,
                          std::vector<std::pair<VertexId, VertexId>> edges) {
    for (auto [u, v] : edges) {
      if (u >= num_vertices || v >= num_vertices)
        throw std::invalid_argument("edge endpoint out of range");
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_ = num_vertices;
    g.m_ = edges.size();

    g.out_offsets_.assign(num_vertices + 1, 0);
    g.in_offsets_.assign(num_vertices + 1, 0);
    for (auto [u, v] : edges) {
      ++g.out_offsets_[u + 1];
      ++g.in_offsets_[v + 1];
    }
    for (VertexId v = 0; v < num_vertices; ++v) {
      g.out_offsets_[v + 1] += g.out_offsets_[v];
      g.in_offsets_[v + 1] += g.in_offsets_[v];
    }

    g.out_adj_.resize(edges.size());
    g.in_adj_.resize(edges.size());
    {
      std::vector<std::uint64_t> cursor(g.in_offsets_.begin(),
                                        g.in_offsets_.end() - 1);
      std::uint64_t pos = 0;
      for (auto [u, v] : edges) {
        g.out_adj_[pos++] = v;        // edges sorted by (u,v): rows stay sorted
        g.in_adj_[cursor[v]++] = u;   // u ascends per v for the same reason
      }
    }

    g.build_merged();
    return g;
  }

  VertexId num_vertices() const { return n_; }
  std::uint64_t num_edges() const { return m_; }

  std::span<const VertexId> out_neighbors(VertexId v) const {
    return {out_adj_.data() + out_offsets_[v],
            out_adj_.data() + out_offsets_[v + 1]};
  }
  std::span<const VertexId> in_neighbors(VertexId v) const {
    return {in_adj_.data() + in_offsets_[v],
            in_adj_.data() + in_offsets_[v + 1]};
  }

  // Merged view: parallel spans of neighbor ids and weights (1 or 2).
  std::span<const VertexId> merged_neighbors(VertexId v) const {
    return {mrg_adj_.data() + mrg_offsets_[v],
            mrg_adj_.data() + mrg_offsets_[v + 1]};
  }
  std::span<const std::uint8_t> merged_weights(VertexId v) const {
    return {mrg_w_.data() + mrg_offsets_[v],
            mrg_w_.data() + mrg_offsets_[v + 1]};
  }

  std::int64_t out_degree(VertexId v) const {
    return static_cast<std::int64_t>(out_offsets_[v + 1] - out_offsets_[v]);
  }

  // Total merged weight incident to v; the denominator when normalizing
  // neighborhood label shares, and the per-vertex load under
  // DegreeMeasure::merged_weight.
  std::int64_t merged_weight_sum(VertexId v) const {
    return merged_weight_sum_[v];
  }

  std::int64_t vertex_load(VertexId v, DegreeMeasure measure) const {
    return measure == DegreeMeasure::out_degree ? out_degree(v)
                                                : merged_weight_sum(v);
  }

 private:
  void build_merged() {
    mrg_offsets_.assign(n_ + 1, 0);
    merged_weight_sum_.assign(n_, 0);

    // Two passes: count union sizes, then fill. Out- and in-rows are both
    // sorted, so the union is a linear merge.
    for (VertexId v = 0; v < n_; ++v) {
      auto out = out_neighbors(v);
      auto in = in_neighbors(v);
      std::size_t i = 0, j = 0, cnt = 0;
      while (i < out.size() && j < in.size()) {
        cnt++;
        if (out[i] < in[j]) ++i;
        else if (in[j] < out[i]) ++j;
        else { ++i; ++j; }
      }
      cnt += (out.size() - i) + (in.size() - j);
      mrg_offsets_[v + 1] = mrg_offsets_[v] + cnt;
    }

    mrg_adj_.resize(mrg_offsets_[n_]);
    mrg_w_.resize(mrg_offsets_[n_]);
    for (VertexId v = 0; v < n_; ++v) {
      auto out = out_neighbors(v);
      auto in = in_neighbors(v);
      std::size_t i = 0, j = 0;
      std::uint64_t pos = mrg_offsets_[v];
      std::int64_t sum = 0;
      auto emit = [&](VertexId u, std::uint8_t w) {
        mrg_adj_[pos] = u;
        mrg_w_[pos] = w;
        ++pos;
        sum += w;
      };
      while (i < out.size() && j < in.size()) {
        if (out[i] < in[j]) emit(out[i++], 1);
        else if (in[j] < out[i]) emit(in[j++], 1);
        else { emit(out[i], 2); ++i; ++j; }
      }
      while (i < out.size()) emit(out[i++], 1);
      while (j < in.size()) emit(in[j++], 1);
      merged_weight_sum_[v] = sum;
    }
  }

  VertexId n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> out_offsets_, in_offsets_, mrg_offsets_;
  std::vector<VertexId> out_adj_, in_adj_, mrg_adj_;
  std::vector<std::uint8_t> mrg_w_;
  std::vector<std::int64_t> merged_weight_sum_;
};

// Global shape summary used for run logs and reports.
struct GraphStats {
  std::uint64_t num_vertices = 0;
  std::uint64_t num_edges = 0;
  double density = 0.0;           // |E| / (|V| * (|V|-1)), directed
  double mean_degree = 0.0;       // mean out-degree
  std::int64_t mode_degree = 0;   // most frequent out-degree, ties -> smallest
  double degree_stddev = 0.0;     // population stddev
  double degree_skewness = 0.0;   // Pearson's first: (mean - mode) / stddev
};

inline GraphStats compute_stats(const Graph& g) {
  GraphStats s;
  s.num_vertices = g.num_vertices();
  s.num_edges = g.num_edges();
  const double n = static_cast<double>(g.num_vertices());
  if (g.num_vertices() > 1)
    s.density = static_cast<double>(g.num_edges()) / (n * (n - 1.0));
  if (g.num_vertices() == 0) return s;

  std::vector<std::int64_t> deg(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) deg[v] = g.out_degree(v);

  double mean = 0.0;
  for (auto d : deg) mean += static_cast<double>(d);
  mean /= n;

  std::sort(deg.begin(), deg.end());
  std::int64_t mode = deg[0];
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < deg.size();) {
    std::size_t j = i;
    while (j < deg.size() && deg[j] == deg[i]) ++j;
    if (j - i > best_count) {  // strict: ties keep the smaller value
      best_count = j - i;
      mode = deg[i];
    }
    i = j;
  }

  double var = 0.0;
  for (auto d : deg) {
    const double delta = static_cast<double>(d) - mean;
    var += delta * delta;
  }
  var /= n;

  s.mean_degree = mean;
  s.mode_degree = mode;
  s.degree_stddev = std::sqrt(var);
  s.degree_skewness =
      s.degree_stddev > 0.0 ? (mean - static_cast<double>(mode)) / s.degree_stddev
                            : 0.0;
  return s;
}

}  // namespace revolver
