#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "i4vlab/latent.hpp"

namespace i4vlab {

enum class ScheduleKind { kLinear, kScaledLinear };

// Discrete diffusion noise schedule over training timesteps 1..T_train.
// alpha_bars[t-1] is the cumulative retained-signal coefficient
// prod_{s<=t} (1 - beta_s), accumulated in extended precision.
struct NoiseSchedule {
  std::vector<double> betas;
  std::vector<double> alpha_bars;
  int T_train = 0;

  double beta(int t) const {
    check_t(t);
    return betas[static_cast<std::size_t>(t) - 1];
  }
  double alpha_bar(int t) const {
    check_t(t);
    return alpha_bars[static_cast<std::size_t>(t) - 1];
  }
  double snr(int t) const {
    const double ab = alpha_bar(t);
    return ab / (1.0 - ab);
  }

  void check_t(int t) const {
    if (t < 1 || t > T_train)
      throw std::invalid_argument("timestep out of range: t=" + std::to_string(t) +
                                  ", T_train=" + std::to_string(T_train));
  }
};

inline NoiseSchedule make_schedule(ScheduleKind kind, double beta_start,
                                   double beta_end, int T_train) {
  if (T_train < 1)
    throw std::invalid_argument("make_schedule: T_train must be >= 1");
  if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0))
    throw std::invalid_argument(
        "make_schedule: need 0 < beta_start <= beta_end < 1");
  NoiseSchedule s;
  s.T_train = T_train;
  s.betas.resize(static_cast<std::size_t>(T_train));
  for (int i = 0; i < T_train; ++i) {
    const double frac = (T_train == 1) ? 0.0 : static_cast<double>(i) / (T_train - 1);
    if (kind == ScheduleKind::kLinear) {
      s.betas[static_cast<std::size_t>(i)] = beta_start + (beta_end - beta_start) * frac;
    } else {
      const double r = std::sqrt(beta_start) +
                       (std::sqrt(beta_end) - std::sqrt(beta_start)) * frac;
      s.betas[static_cast<std::size_t>(i)] = r * r;
    }
  }
  s.alpha_bars.resize(static_cast<std::size_t>(T_train));
  long double prod = 1.0L;
  for (int i = 0; i < T_train; ++i) {
    prod *= (1.0L - static_cast<long double>(s.betas[static_cast<std::size_t>(i)]));
    s.alpha_bars[static_cast<std::size_t>(i)] = static_cast<double>(prod);
  }
  return s;
}

// SNR at the terminal training step; strictly positive whenever the
// cumulative product has not collapsed to zero -- the signal-leak quantity.
inline double terminal_snr(const NoiseSchedule& s) {
  const double ab = s.alpha_bars.back();
  return ab / (1.0 - ab);
}

// Forward diffusion: sqrt(ab_t) z0 + sqrt(1 - ab_t) eps.
inline VideoLatent add_noise(const VideoLatent& z0, const VideoLatent& eps,
                             int t, const NoiseSchedule& s) {
  require_same_shape(z0, eps, "add_noise");
  const double ab = s.alpha_bar(t);
  return VideoLatent(std::sqrt(ab) * z0.mat() + std::sqrt(1.0 - ab) * eps.mat());
}

// Strictly increasing subsequence of 1..T_train traversed in decreasing
// order during denoising; always contains the terminal step.
struct InferenceGrid {
  std::vector<int> steps;
  int size() const { return static_cast<int>(steps.size()); }
};

inline InferenceGrid make_inference_grid(const NoiseSchedule& s, int n_steps) {
  if (n_steps < 1 || n_steps > s.T_train)
    throw std::invalid_argument("make_inference_grid: need 1 <= n_steps <= T_train");
  InferenceGrid g;
  g.steps.resize(static_cast<std::size_t>(n_steps));
  for (int i = 0; i < n_steps; ++i) {
    g.steps[static_cast<std::size_t>(i)] = static_cast<int>(
        (static_cast<long long>(i) + 1) * s.T_train / n_steps);
  }
  return g;
}

// tau = Int(T_train * p), with a tiny nudge so exact products like
// 1000 * 0.4 floor to the intended integer.
inline int cut_timestep(double p, int T_train) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("cut fraction p must lie in [0, 1]");
  return static_cast<int>(std::floor(p * T_train + 1e-9));
}

// Number of grid steps at or below tau; the prefix a regeneration pass
// denoises.
inline int grid_prefix_count(const InferenceGrid& grid, double p, int T_train) {
  const int tau = cut_timestep(p, T_train);
  int count = 0;
  while (count < grid.size() && grid.steps[static_cast<std::size_t>(count)] <= tau)
    ++count;
  return count;
}

// Index where the kept suffix begins: position of the first grid step
// strictly above tau, clamped so the terminal step is always retained.
// NI-VSDS sweeps the suffix [cut_index, size); p = 0 keeps the whole grid,
// p = 1 keeps the terminal step only.
inline int cut_index(const InferenceGrid& grid, double p, int T_train) {
  const int c = grid_prefix_count(grid, p, T_train);
  return std::min(c, grid.size() - 1);
}

}  // namespace i4vlab
