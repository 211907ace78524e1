#ifndef NLMC_TIME_WALK_HPP
#define NLMC_TIME_WALK_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "nlmc/kernel.hpp"
#include "nlmc/rng.hpp"
#include "nlmc/stats.hpp"

namespace nlmc {

// Discretization weights of the truncated-kernel time derivative on a uniform
// grid with step k and horizon delta = m*k:
//   omega_1 = delta^{alpha-1}
//   omega_j = delta^{alpha-1} (1-alpha)/alpha ((j-1)^-alpha - j^-alpha), j = 2..m
//   omega_0 = delta^{alpha-1} (1 + (1-alpha)/alpha (1 - m^-alpha))
// and jump probabilities p_j = omega_j / omega_0 (they sum to one since
// sum_j omega_j telescopes to omega_0).
struct JumpWeights {
  double alpha = 0.0;
  double delta = 0.0;
  double k = 0.0;
  int m = 0;
  std::vector<double> omega;  // omega[0..m]
  std::vector<double> prob;   // prob[0] = p_1, ..., prob[m-1] = p_m
};

JumpWeights compute_weights(double alpha, double delta, double k);

// Outcome of running the decreasing time chain until it first reaches <= 0.
// crossing_value is the post-jump position (the overshoot); the discrete chain
// may land exactly on 0.
struct TimeExitSample {
  long steps = 0;             // chain steps taken to cross
  double crossing_value = 0;  // position after the crossing jump, <= 0
};

using PathVisitor = std::function<void(double)>;

// Runs the lattice chain from t_start (a positive multiple of k, snapped by
// the caller) until the position drops to <= 0. The optional visitor sees
// every visited position including t_start and the crossing value.
TimeExitSample simulate_exit(const JumpWeights& w, double t_start, Rng& rng,
                             const PathVisitor* visitor = nullptr);

// Atomic (Dirac) kernel: jumps of size delta after Exp(lambda) waits, so the
// first passage below 0 happens at a Gamma(n, lambda) clock with
// n = ceil(t_start/delta) and crossing value t_start - n*delta exactly.
struct AtomicExitSample {
  double exit_clock = 0.0;
  double crossing_value = 0.0;
  long jumps = 0;
};

AtomicExitSample simulate_exit_atomic(double lambda, double delta, double t_start, Rng& rng);

struct ClockEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n_trials = 0;
  std::uint64_t seed = 0;
};

// Mean exit clock of the lattice chain; one chain step lasts step_duration
// units of the Monte Carlo clock (owned by the caller, see the estimator).
ClockEstimate mean_exit_clock(const JumpWeights& w, double t_start, long long n_trials,
                              std::uint64_t seed, double step_duration);

ClockEstimate mean_exit_clock_atomic(double lambda, double delta, double t_start,
                                     long long n_trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Generic jump chain over the k-lattice for any kernel family, built from
// per-cell weights
//   W_1 = (1/k) int_0^k r rho(t,r) dr,   W_j = int_{(j-1)k}^{jk} rho(t,r) dr
// with the portion beyond the tabulated range lumped into one outcome and
// resolved to an exact cell on demand (every lumped jump crosses 0 from any
// reachable position, so only its overshoot matters). The truncated family
// reproduces the JumpWeights distribution exactly. Variable-order kernels are
// sampled per step with alpha frozen at the current position and need no
// tables; their total rate depends on the position, which the caller must
// compensate by thinning.
class TimeChain {
 public:
  // n_cells: number of tabulated cells; pass the start position in cells so
  // every jump beyond the table is guaranteed to cross zero.
  TimeChain(const Kernel& kernel, double k, long n_cells);

  // One jump, in whole cells (>= 1).
  long sample_jump(long position_cells, Rng& rng) const;

  // Total jump rate nu(t) = W_1/k-moment form + tail; constant except for the
  // variable-order family.
  double total_rate(double t) const;
  bool rate_is_position_dependent() const;

  double step() const { return k_; }
  long tabulated_cells() const { return n_cells_; }

 private:
  long sample_far_cell(Rng& rng) const;  // cells beyond the table

  Kernel kernel_;
  double k_ = 0.0;
  long n_cells_ = 0;
  double total_rate_ = 0.0;
  double far_weight_ = 0.0;
  // Alias table over {cell 1..n_cells, far}.
  std::vector<double> alias_prob_;
  std::vector<std::int32_t> alias_idx_;
};

}  // namespace nlmc

#endif  // NLMC_TIME_WALK_HPP
