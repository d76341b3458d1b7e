#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace revolver {

using VertexId = std::uint32_t;
using PartitionId = std::int32_t;

// Which notion of vertex load drives balancing: plain out-degree, or the
// summed weights of the merged (undirected, reciprocity-weighted) adjacency.
enum class DegreeMeasure : std::uint8_t { out_degree, merged_weight };

// Stateless mixer used to derive independent per-worker seeds from one
// user-facing seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Thin wrapper over mt19937_64. next_double() maps the top 53 bits onto
// [0,1) directly instead of going through uniform_real_distribution, whose
// output sequence is implementation-defined; runs stay reproducible across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  double next_double() { return (eng_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) via rejection-free scaling; bound is tiny
  // (partition counts), so the bias of the multiply-shift trick is < 2^-32.
  std::uint32_t next_below(std::uint32_t bound) {
    return static_cast<std::uint32_t>((eng_() >> 32) * bound >> 32);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace revolver
