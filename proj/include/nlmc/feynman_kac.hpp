#ifndef NLMC_FEYNMAN_KAC_HPP
#define NLMC_FEYNMAN_KAC_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "nlmc/problem.hpp"
#include "nlmc/time_walk.hpp"

namespace nlmc {

// Mesh coupling of the truncated-kernel scheme: 2 alpha k^alpha = h^2 delta^{alpha-1},
// i.e. k = (h^2 delta^{alpha-1} / (2 alpha))^{1/alpha}. The caller then rounds
// delta/k to an integer cell count and recomputes k = delta/m.
double clock_scaling(double alpha, double delta, double h);

// Operational time spanned by one Monte Carlo step of the coupled walk. One
// +-h move of the symmetric lattice walk emulates the generator d^2/dx^2 over
// exactly h^2/2 time units; the time-chain step is matched to the same span
// (see choose_time_step).
double mc_step_duration(double h);

struct TimeStepChoice {
  double k = 0.0;      // adjusted step actually used
  double raw_k = 0.0;  // step before integer-cell rounding
  long m_cells = 0;    // delta/k for the truncated family, 0 otherwise
};

// Time step for the joint walk. Truncated kernels follow the published
// scaling with delta/k rounded to an integer. The other density families are
// an extension: k solves nu(k) * h^2/2 = 1, where nu is the total jump rate
// of the discretized chain, so both components advance on the same clock.
// Variable-order kernels get sized against the largest rate over the probe
// range and are thinned per step inside the estimator.
TimeStepChoice choose_time_step(const Kernel& kernel, double h);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n_trials = 0;
  std::uint64_t seed = 0;
  double snapped_t = 0.0;
  int x_index = 0;
};

// Monte Carlo estimator of the solution representation
//   u(t,x) = E[ phi(-X(tau_0), B^x(tau_0)) 1{tau_0 < tau_Omega} ]
//          + E[ int_0^{tau_0 ^ tau_Omega} f(-X(s), B^x(s)) ds ]
// on the coupled lattice: per step the time chain executes one jump and the
// walk one +-h move; the forcing integral uses the trapezoid rule with step
// weight h^2/2. Atomic kernels run on continuous exponential clocks instead,
// with the walk advanced by the number of lattice steps that fit into each
// waiting interval.
//
// The object is immutable after construction. Trials are independent, each
// drawing its random stream from (seed, trial index); partitions are merged
// in fixed order so results are bit-identical for any worker count.
class SolutionEstimator {
 public:
  SolutionEstimator(ProblemData problem, double t);
  ~SolutionEstimator();
  SolutionEstimator(const SolutionEstimator&) = delete;
  SolutionEstimator& operator=(const SolutionEstimator&) = delete;

  McEstimate estimate_solution(int x_index, long long n_trials, std::uint64_t seed) const;

  // Same walk with phi = 0, f = 1: the mean joint exit clock E[tau_0 ^ tau_Omega].
  McEstimate estimate_mean_exit(int x_index, long long n_trials, std::uint64_t seed) const;

  double snapped_t() const { return t_snapped_; }
  double time_step() const { return k_; }
  double step_duration() const { return ds_; }

 private:
  double trial_solution(int x_index, Rng& rng) const;
  double trial_solution_lattice(int x_index, Rng& rng) const;
  double trial_solution_atomic(int x_index, Rng& rng) const;
  double trial_exit(int x_index, Rng& rng) const;
  double trial_exit_lattice(int x_index, Rng& rng) const;
  double trial_exit_atomic(int x_index, Rng& rng) const;
  double f_cell(long pos_cells, int j) const {
    return f_table_[static_cast<std::size_t>(pos_cells - 1) * (prob_.lattice.M - 1) + (j - 1)];
  }
  double f_row(long row, int j) const {
    return f_rows_[static_cast<std::size_t>(row) * (prob_.lattice.M - 1) + (j - 1)];
  }

  ProblemData prob_;
  double ds_ = 0.0;
  double t_snapped_ = 0.0;
  bool has_phi_ = false;
  bool has_f_ = false;
  // lattice-chain state (density kernels)
  std::unique_ptr<TimeChain> chain_;
  double k_ = 0.0;
  long n0_ = 0;
  bool thin_ = false;
  std::vector<double> f_table_;  // f on (chain cell, interior index)
  // atomic state
  long n_jumps_ = 0;
  std::vector<double> f_rows_;  // f at the n chain values t - i*delta
};

// Forcing transfer of the historical datum:
//   f_phi(t,x) = int_t^inf (phi(t-r,x) - phi(0,x)) rho(t,r) dr,  t > 0.
// Vanishes for t >= delta under truncated/atomic kernels; atomic kernels
// contribute lambda (phi(t-delta,x) - phi(0,x)) for t < delta.
double compute_phi_forcing(const ProblemData& problem, double t, double x);

}  // namespace nlmc

#endif  // NLMC_FEYNMAN_KAC_HPP
