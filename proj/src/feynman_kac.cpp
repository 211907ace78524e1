#include "nlmc/feynman_kac.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nlmc/errors.hpp"
#include "nlmc/quadrature.hpp"
#include "nlmc/special.hpp"
#include "nlmc/stats.hpp"

namespace nlmc {

double clock_scaling(double alpha, double delta, double h) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("clock_scaling: alpha outside (0,1)");
  if (!(delta > 0.0) || !(h > 0.0)) throw std::domain_error("clock_scaling: delta, h must be positive");
  return std::pow(h * h * std::pow(delta, alpha - 1.0) / (2.0 * alpha), 1.0 / alpha);
}

double mc_step_duration(double h) { return 0.5 * h * h; }

namespace {

// Solve nu(k) * ds = target for k by bisection in log k; nu decreasing in k.
double solve_rate_equation(const std::function<double(double)>& nu, double ds, double target) {
  double lo = 1e-16, hi = 1.0;
  auto val = [&](double k) { return nu(k) * ds - target; };
  while (val(hi) > 0.0 && hi < 1e6) hi *= 2.0;
  while (val(lo) < 0.0 && lo > 1e-300) lo *= 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (val(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

TimeStepChoice choose_time_step(const Kernel& kernel, double h) {
  TimeStepChoice out;
  const double ds = mc_step_duration(h);
  switch (kernel.family()) {
    case KernelFamily::truncated: {
      out.raw_k = clock_scaling(kernel.alpha(), kernel.delta(), h);
      out.m_cells = std::max(1L, std::lround(kernel.delta() / out.raw_k));
      out.k = kernel.delta() / static_cast<double>(out.m_cells);
      return out;
    }
    case KernelFamily::fractional: {
      const double a = kernel.alpha();
      const double nu_scale = fractional_constant(a) * (1.0 / (1.0 - a) + 1.0 / a);
      out.raw_k = std::pow(nu_scale * ds, 1.0 / a);
      out.k = out.raw_k;
      return out;
    }
    case KernelFamily::tempered: {
      auto nu = [&kernel](double k) {
        return kernel.restricted_moment(0.0, k) / k + kernel.tail_mass(0.0, k);
      };
      out.raw_k = solve_rate_equation(nu, ds, 1.0);
      out.k = out.raw_k;
      return out;
    }
    case KernelFamily::variable_order: {
      // Largest rate over the probe range; per-step thinning restores the rest.
      auto nu_sup = [&kernel](double k) {
        double sup = 0.0;
        for (int i = 0; i <= 64; ++i) {
          const double t =
              kernel.probe_lo() + (kernel.probe_hi() - kernel.probe_lo()) * i / 64.0;
          const double a = kernel.alpha_at(t);
          sup = std::max(sup, fractional_constant(a) * std::pow(k, -a) *
                                  (1.0 / (1.0 - a) + 1.0 / a));
        }
        return sup;
      };
      out.raw_k = solve_rate_equation(nu_sup, ds, 0.95);
      out.k = out.raw_k;
      return out;
    }
    case KernelFamily::atomic:
      throw unsupported_operation("choose_time_step: atomic kernels use continuous clocks");
  }
  throw unsupported_operation("unreachable kernel family");
}

namespace {

constexpr long long kPartitionSize = 4096;

int worker_count() {
  if (const char* env = std::getenv("NLMC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Fixed-size partitions accumulated independently and merged in index order:
// the result does not depend on the number of workers or their scheduling.
RunningStats run_partitioned(long long n_trials, std::uint64_t seed,
                             const std::function<double(std::uint64_t, Rng&)>& trial) {
  const long long n_parts = (n_trials + kPartitionSize - 1) / kPartitionSize;
  std::vector<RunningStats> part(static_cast<std::size_t>(n_parts));
  std::atomic<long long> next{0};
  auto work = [&]() {
    for (;;) {
      const long long p = next.fetch_add(1);
      if (p >= n_parts) return;
      RunningStats stats;
      const long long lo = p * kPartitionSize;
      const long long hi = std::min(n_trials, lo + kPartitionSize);
      for (long long i = lo; i < hi; ++i) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(i));
        stats.add(trial(static_cast<std::uint64_t>(i), rng));
      }
      part[static_cast<std::size_t>(p)] = stats;
    }
  };
  const int n_workers = std::min<long long>(worker_count(), n_parts);
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  RunningStats total;
  for (const auto& p : part) total.merge(p);
  return total;
}

}  // namespace

SolutionEstimator::SolutionEstimator(ProblemData problem, double t) : prob_(std::move(problem)) {
  if (prob_.lattice.M < 2) throw config_error("SolutionEstimator: lattice not configured");
  if (!(t > 0.0) || t > prob_.T * (1.0 + 1e-12))
    throw std::domain_error("SolutionEstimator: t must lie in (0, T]");
  ds_ = mc_step_duration(prob_.lattice.h);
  has_phi_ = static_cast<bool>(prob_.phi);
  has_f_ = static_cast<bool>(prob_.f);
  const int M = prob_.lattice.M;

  if (prob_.kernel.family() == KernelFamily::atomic) {
    t_snapped_ = t;  // continuous clocks; no time grid
    n_jumps_ = static_cast<long>(std::ceil(t / prob_.kernel.delta() - 1e-12));
    if (n_jumps_ < 1) n_jumps_ = 1;
    if (has_f_) {
      f_rows_.resize(static_cast<std::size_t>(n_jumps_) * (M - 1));
      for (long i = 0; i < n_jumps_; ++i) {
        const double ti = t - static_cast<double>(i) * prob_.kernel.delta();
        for (int j = 1; j < M; ++j)
          f_rows_[static_cast<std::size_t>(i) * (M - 1) + (j - 1)] =
              prob_.f(ti, prob_.lattice.point(j));
      }
    }
    return;
  }

  const TimeStepChoice choice =
      prob_.time_step ? TimeStepChoice{*prob_.time_step, *prob_.time_step, 0}
                      : choose_time_step(prob_.kernel, prob_.lattice.h);
  k_ = choice.k;
  n0_ = static_cast<long>(std::floor(t / k_ + 1e-9));
  if (n0_ < 1)
    throw std::domain_error("SolutionEstimator: t is below one time step of the chain grid");
  t_snapped_ = static_cast<double>(n0_) * k_;
  chain_ = std::make_unique<TimeChain>(prob_.kernel, k_, n0_);
  thin_ = chain_->rate_is_position_dependent();
  if (has_f_) {
    f_table_.resize(static_cast<std::size_t>(n0_) * (M - 1));
    for (long c = 1; c <= n0_; ++c) {
      const double tc = static_cast<double>(c) * k_;
      for (int j = 1; j < M; ++j)
        f_table_[static_cast<std::size_t>(c - 1) * (M - 1) + (j - 1)] =
            prob_.f(tc, prob_.lattice.point(j));
    }
  }
}

SolutionEstimator::~SolutionEstimator() = default;

double SolutionEstimator::trial_solution(int x_index, Rng& rng) const {
  return prob_.kernel.family() == KernelFamily::atomic ? trial_solution_atomic(x_index, rng)
                                                       : trial_solution_lattice(x_index, rng);
}

double SolutionEstimator::trial_solution_lattice(int x_index, Rng& rng) const {
  const int M = prob_.lattice.M;
  long pos = n0_;
  int j = x_index;
  double acc = has_f_ ? 0.5 * f_cell(pos, j) : 0.0;
  for (;;) {
    bool jumped = true;
    if (thin_) {
      const double q = chain_->total_rate(static_cast<double>(pos) * k_) * ds_;
      jumped = rng.next_double() < q;
    }
    if (jumped) pos -= chain_->sample_jump(pos, rng);
    j += (rng.next_u64() & 1ULL) ? 1 : -1;
    if (j == 0 || j == M) return acc * ds_;  // spatial exit first (or tied): no phi term
    if (pos <= 0) {
      double payoff = acc * ds_;
      if (has_phi_) payoff += prob_.phi(static_cast<double>(pos) * k_, prob_.lattice.point(j));
      return payoff;
    }
    if (has_f_) acc += f_cell(pos, j);
  }
}

double SolutionEstimator::trial_solution_atomic(int x_index, Rng& rng) const {
  const int M = prob_.lattice.M;
  const double lambda = prob_.kernel.lambda();
  int j = x_index;
  long steps_done = 0;
  double clock = 0.0;
  double acc = has_f_ ? 0.5 * f_row(0, j) : 0.0;
  for (long stage = 1; stage <= n_jumps_; ++stage) {
    clock += rng.next_exponential(lambda);
    const long target = static_cast<long>(std::floor(clock / ds_));
    while (steps_done < target) {
      j += (rng.next_u64() & 1ULL) ? 1 : -1;
      ++steps_done;
      if (j == 0 || j == M) return acc * ds_;  // killed in space before tau_0
      if (has_f_) acc += f_row(stage - 1, j);
    }
  }
  double payoff = acc * ds_;
  if (has_phi_)
    payoff += prob_.phi(t_snapped_ - static_cast<double>(n_jumps_) * prob_.kernel.delta(),
                        prob_.lattice.point(j));
  return payoff;
}

double SolutionEstimator::trial_exit(int x_index, Rng& rng) const {
  return prob_.kernel.family() == KernelFamily::atomic ? trial_exit_atomic(x_index, rng)
                                                       : trial_exit_lattice(x_index, rng);
}

double SolutionEstimator::trial_exit_lattice(int x_index, Rng& rng) const {
  const int M = prob_.lattice.M;
  long pos = n0_;
  int j = x_index;
  long steps = 0;
  for (;;) {
    bool jumped = true;
    if (thin_) {
      const double q = chain_->total_rate(static_cast<double>(pos) * k_) * ds_;
      jumped = rng.next_double() < q;
    }
    if (jumped) pos -= chain_->sample_jump(pos, rng);
    j += (rng.next_u64() & 1ULL) ? 1 : -1;
    ++steps;
    if (j == 0 || j == M || pos <= 0)
      return (static_cast<double>(steps) - 0.5) * ds_;  // trapezoid rule for f == 1
  }
}

double SolutionEstimator::trial_exit_atomic(int x_index, Rng& rng) const {
  const int M = prob_.lattice.M;
  const double lambda = prob_.kernel.lambda();
  int j = x_index;
  long steps_done = 0;
  double clock = 0.0;
  for (long stage = 1; stage <= n_jumps_; ++stage) {
    clock += rng.next_exponential(lambda);
    const long target = static_cast<long>(std::floor(clock / ds_));
    while (steps_done < target) {
      j += (rng.next_u64() & 1ULL) ? 1 : -1;
      ++steps_done;
      if (j == 0 || j == M) return static_cast<double>(steps_done) * ds_;  // tau_Omega
    }
  }
  return clock;  // tau_0 = Gamma(n, lambda) came first
}

McEstimate SolutionEstimator::estimate_solution(int x_index, long long n_trials,
                                                std::uint64_t seed) const {
  if (x_index < 0 || x_index > prob_.lattice.M)
    throw std::domain_error("estimate_solution: x_index outside the lattice");
  if (n_trials < 1) throw config_error("estimate_solution: n_trials must be >= 1");
  McEstimate est;
  est.n_trials = n_trials;
  est.seed = seed;
  est.snapped_t = t_snapped_;
  est.x_index = x_index;
  if (x_index == 0 || x_index == prob_.lattice.M) return est;  // boundary: exactly zero
  const RunningStats stats = run_partitioned(
      n_trials, seed, [this, x_index](std::uint64_t, Rng& rng) { return trial_solution(x_index, rng); });
  est.mean = stats.mean;
  est.std_error = stats.std_error();
  return est;
}

McEstimate SolutionEstimator::estimate_mean_exit(int x_index, long long n_trials,
                                                 std::uint64_t seed) const {
  if (x_index < 0 || x_index > prob_.lattice.M)
    throw std::domain_error("estimate_mean_exit: x_index outside the lattice");
  if (n_trials < 1) throw config_error("estimate_mean_exit: n_trials must be >= 1");
  McEstimate est;
  est.n_trials = n_trials;
  est.seed = seed;
  est.snapped_t = t_snapped_;
  est.x_index = x_index;
  if (x_index == 0 || x_index == prob_.lattice.M) return est;
  const RunningStats stats = run_partitioned(
      n_trials, seed, [this, x_index](std::uint64_t, Rng& rng) { return trial_exit(x_index, rng); });
  est.mean = stats.mean;
  est.std_error = stats.std_error();
  return est;
}

double compute_phi_forcing(const ProblemData& problem, double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("compute_phi_forcing: t must be positive");
  if (!problem.phi) return 0.0;
  const Kernel& ker = problem.kernel;
  const double phi0 = problem.phi(0.0, x);
  if (ker.family() == KernelFamily::atomic) {
    if (t >= ker.delta()) return 0.0;
    return ker.lambda() * (problem.phi(t - ker.delta(), x) - phi0);
  }
  auto integrand = [&](double r) { return (problem.phi(t - r, x) - phi0) * ker.evaluate(t, r); };
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-13;
  if (ker.family() == KernelFamily::truncated) {
    if (t >= ker.delta()) return 0.0;
    return integrate(integrand, t, ker.delta(), opt);
  }
  return integrate_upper(integrand, t, opt);
}

}  // namespace nlmc
