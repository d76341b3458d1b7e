#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "revolver/types.hpp"

namespace revolver {

// One learning automaton per vertex, one action per partition label. The
// automaton keeps a probability vector over actions; reinforcement pulls
// probability toward actions that look good and away from the rest.

enum class Signal : std::uint8_t { reward = 0, penalty = 1 };

// Samples an action index proportionally to p. p is a probability vector;
// accumulated rounding may leave the total a hair under 1, in which case the
// draw falls through to the last action.
inline int roulette_select(std::span<const double> p, Rng& rng) {
  const double u = rng.next_double();
  double cum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cum += p[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

// Linear reward/penalty update for a single action:
//   reward:  p_a += alpha * (1 - p_a),        p_j *= (1 - alpha)
//   penalty: p_a *= (1 - beta),               p_j = (1-beta) p_j + beta/(m-1)
// Preserves sum(p) == 1 exactly in real arithmetic. A single-action
// automaton has nothing to learn and is left untouched.
inline void classic_update(std::span<double> p, int action, Signal s,
                           double alpha, double beta) {
  const std::size_t m = p.size();
  if (m < 2) return;
  if (s == Signal::reward) {
    for (std::size_t j = 0; j < m; ++j)
      p[j] = static_cast<int>(j) == action ? p[j] + alpha * (1.0 - p[j])
                                           : p[j] * (1.0 - alpha);
  } else {
    const double redistribute = beta / static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j)
      p[j] = static_cast<int>(j) == action ? p[j] * (1.0 - beta)
                                           : p[j] * (1.0 - beta) + redistribute;
  }
}

// Per-action reinforcement signals plus their strengths, derived from an
// objective weight vector: actions above the mean weight are rewarded, the
// rest penalized, and each half is normalized to unit mass so reward and
// penalty pull with comparable force. Returns nothing when no action clears
// the mean (all weights equal) - there is no gradient to follow, the caller
// skips the update. All-zero weights are a caller bug.
struct StepSignals {
  std::vector<std::uint8_t> signals;  // Signal per action
  std::vector<double> weights;        // normalized within each half
};

// In-place core: w holds the raw weights on entry, the normalized ones on
// exit; r receives the signals. Returns false when the update should be
// skipped. Used directly by the engine to avoid per-vertex allocation.
inline bool build_signals_inplace(std::span<double> w,
                                  std::span<std::uint8_t> r) {
  double sum = 0.0;
  for (double x : w) sum += x;
  if (sum <= 0.0)
    throw std::invalid_argument("signal weights must not be all zero");
  const double mean = sum / static_cast<double>(w.size());

  double reward_sum = 0.0, penalty_sum = 0.0;
  bool any_reward = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > mean) {
      r[i] = static_cast<std::uint8_t>(Signal::reward);
      reward_sum += w[i];
      any_reward = true;
    } else {
      r[i] = static_cast<std::uint8_t>(Signal::penalty);
      penalty_sum += w[i];
    }
  }
  if (!any_reward) return false;

  for (std::size_t i = 0; i < w.size(); ++i) {
    // A penalty half whose members all weigh zero stays at zero strength.
    const double half =
        r[i] == static_cast<std::uint8_t>(Signal::reward) ? reward_sum
                                                          : penalty_sum;
    if (half > 0.0) w[i] /= half;
  }
  return true;
}

inline std::optional<StepSignals> build_signals(std::span<const double> w) {
  StepSignals out;
  out.weights.assign(w.begin(), w.end());
  out.signals.resize(w.size());
  if (!build_signals_inplace(out.weights, out.signals)) return std::nullopt;
  return out;
}

// Weighted sweep update: every action i applies its own reward or penalty to
// the whole vector, scaled per-component by the signal strengths:
//   reward at i:  p_i += alpha w_i (1 - p_i),   p_j *= (1 - alpha w_j)
//   penalty at i: p_i *= (1 - beta w_i),        p_j = (1 - beta w_j) p_j
//                                                     + beta/(m-1)
// (the redistribution term is deliberately unweighted). Individual sweeps do
// not preserve the total, so the vector is re-normalized afterwards when it
// has drifted; negative dust from rounding is clamped first.
inline void weighted_update(std::span<double> p,
                            std::span<const std::uint8_t> signals,
                            std::span<const double> weights, double alpha,
                            double beta) {
  const std::size_t m = p.size();
  if (m < 2) return;
  const double redistribute = beta / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (signals[i] == static_cast<std::uint8_t>(Signal::reward)) {
      for (std::size_t j = 0; j < m; ++j)
        p[j] = j == i ? p[j] + alpha * weights[j] * (1.0 - p[j])
                      : p[j] * (1.0 - alpha * weights[j]);
    } else {
      for (std::size_t j = 0; j < m; ++j)
        p[j] = j == i ? p[j] * (1.0 - beta * weights[j])
                      : p[j] * (1.0 - beta * weights[j]) + redistribute;
    }
  }
  double sum = 0.0;
  for (double& x : p) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    if (sum <= 0.0) {
      std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(m));
    } else {
      for (double& x : p) x /= sum;
    }
  }
}

inline void weighted_update(std::span<double> p, const StepSignals& s,
                            double alpha, double beta) {
  weighted_update(p, s.signals, s.weights, alpha, beta);
}

// Probability vectors for all vertices, flat n x k, initialized uniform.
class AutomataNetwork {
 public:
  AutomataNetwork(VertexId n, std::int32_t k, double alpha, double beta)
      : k_(k), alpha_(alpha), beta_(beta) {
    if (k < 1) throw std::invalid_argument("action count must be >= 1");
    if (!(alpha > 0.0) || alpha > 1.0)
      throw std::invalid_argument("alpha must be in (0, 1]");
    if (beta < 0.0 || beta > 1.0)
      throw std::invalid_argument("beta must be in [0, 1]");
    p_.assign(static_cast<std::size_t>(n) * k,
              1.0 / static_cast<double>(k));
  }

  std::int32_t num_actions() const { return k_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  std::span<double> probabilities(VertexId v) {
    return {p_.data() + static_cast<std::size_t>(v) * k_,
            static_cast<std::size_t>(k_)};
  }
  std::span<const double> probabilities(VertexId v) const {
    return {p_.data() + static_cast<std::size_t>(v) * k_,
            static_cast<std::size_t>(k_)};
  }

 private:
  std::int32_t k_;
  double alpha_, beta_;
  std::vector<double> p_;
};

}  // namespace revolver
