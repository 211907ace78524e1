#include "nlmc/time_walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nlmc/errors.hpp"
#include "nlmc/quadrature.hpp"
#include "nlmc/special.hpp"

namespace nlmc {

JumpWeights compute_weights(double alpha, double delta, double k) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw config_error("compute_weights: alpha must lie in (0,1)");
  if (!(delta > 0.0) || !(k > 0.0)) throw config_error("compute_weights: delta and k must be positive");
  const double m_real = delta / k;
  const long m = std::lround(m_real);
  if (m < 1 || std::fabs(m_real - static_cast<double>(m)) > 1e-9 * std::max(1.0, m_real)) {
    std::ostringstream msg;
    msg << "compute_weights: delta/k = " << m_real << " is not a positive integer";
    throw config_error(msg.str());
  }
  JumpWeights w;
  w.alpha = alpha;
  w.delta = delta;
  w.k = k;
  w.m = static_cast<int>(m);
  w.omega.resize(m + 1);
  w.prob.resize(m);
  const double scale = std::pow(delta, alpha - 1.0);
  const double ratio = (1.0 - alpha) / alpha;
  w.omega[1] = scale;
  for (long j = 2; j <= m; ++j)
    w.omega[j] = scale * ratio * (std::pow(static_cast<double>(j - 1), -alpha) -
                                  std::pow(static_cast<double>(j), -alpha));
  w.omega[0] = scale * (1.0 + ratio * (1.0 - std::pow(static_cast<double>(m), -alpha)));
  for (long j = 1; j <= m; ++j) w.prob[j - 1] = w.omega[j] / w.omega[0];
  return w;
}

namespace {

// Vose alias table construction over arbitrary nonnegative weights.
void build_alias(const std::vector<double>& weights, std::vector<double>& prob,
                 std::vector<std::int32_t>& alias) {
  const std::size_t n = weights.size();
  prob.assign(n, 0.0);
  alias.assign(n, 0);
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<double> scaled(n);
  std::vector<std::int32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::int32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::int32_t s = small.back();
    small.pop_back();
    const std::int32_t l = large.back();
    large.pop_back();
    prob[s] = scaled[s];
    alias[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (std::int32_t i : large) prob[i] = 1.0;
  for (std::int32_t i : small) prob[i] = 1.0;
}

inline long sample_alias(const std::vector<double>& prob, const std::vector<std::int32_t>& alias,
                         Rng& rng) {
  const double u = rng.next_double() * static_cast<double>(prob.size());
  long i = static_cast<long>(u);
  if (i >= static_cast<long>(prob.size())) i = static_cast<long>(prob.size()) - 1;
  return (u - static_cast<double>(i) < prob[i]) ? i : alias[i];
}

long cells_from_position(double t_start, double k) {
  const double n_real = t_start / k;
  const long n0 = std::lround(n_real);
  if (n0 < 1 || std::fabs(n_real - static_cast<double>(n0)) > 1e-6) {
    std::ostringstream msg;
    msg << "t_start = " << t_start << " is not a positive multiple of k = " << k;
    throw config_error(msg.str());
  }
  return n0;
}

}  // namespace

TimeExitSample simulate_exit(const JumpWeights& w, double t_start, Rng& rng,
                             const PathVisitor* visitor) {
  long pos = cells_from_position(t_start, w.k);
  std::vector<double> cum(w.prob.size());
  std::partial_sum(w.prob.begin(), w.prob.end(), cum.begin());
  cum.back() = 1.0;
  if (visitor) (*visitor)(static_cast<double>(pos) * w.k);
  TimeExitSample out;
  while (pos > 0) {
    const double u = rng.next_double();
    const long jump = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin() + 1;
    pos -= jump;
    ++out.steps;
    if (visitor) (*visitor)(static_cast<double>(pos) * w.k);
  }
  out.crossing_value = static_cast<double>(pos) * w.k;
  return out;
}

AtomicExitSample simulate_exit_atomic(double lambda, double delta, double t_start, Rng& rng) {
  if (!(t_start > 0.0)) throw std::domain_error("simulate_exit_atomic: t_start must be positive");
  AtomicExitSample out;
  out.jumps = static_cast<long>(std::ceil(t_start / delta - 1e-12));
  if (out.jumps < 1) out.jumps = 1;
  out.crossing_value = t_start - static_cast<double>(out.jumps) * delta;
  out.exit_clock = rng.next_gamma(out.jumps, lambda);
  return out;
}

ClockEstimate mean_exit_clock(const JumpWeights& w, double t_start, long long n_trials,
                              std::uint64_t seed, double step_duration) {
  if (n_trials < 1) throw config_error("mean_exit_clock: n_trials must be >= 1");
  RunningStats stats;
  for (long long i = 0; i < n_trials; ++i) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(i));
    const TimeExitSample s = simulate_exit(w, t_start, rng);
    stats.add(static_cast<double>(s.steps) * step_duration);
  }
  return {stats.mean, stats.std_error(), n_trials, seed};
}

ClockEstimate mean_exit_clock_atomic(double lambda, double delta, double t_start,
                                     long long n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw config_error("mean_exit_clock_atomic: n_trials must be >= 1");
  RunningStats stats;
  for (long long i = 0; i < n_trials; ++i) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(i));
    stats.add(simulate_exit_atomic(lambda, delta, t_start, rng).exit_clock);
  }
  return {stats.mean, stats.std_error(), n_trials, seed};
}

// ---------------------------------------------------------------------------

TimeChain::TimeChain(const Kernel& kernel, double k, long n_cells)
    : kernel_(kernel), k_(k), n_cells_(n_cells) {
  if (!(k > 0.0) || n_cells < 1) throw config_error("TimeChain: need k > 0 and n_cells >= 1");
  const KernelFamily fam = kernel_.family();
  if (fam == KernelFamily::atomic)
    throw unsupported_operation("TimeChain: atomic kernels use continuous exponential clocks");

  if (fam == KernelFamily::variable_order) {
    // Sampled per step in closed form; nothing to tabulate.
    return;
  }

  if (fam == KernelFamily::truncated) {
    // Exact scheme weights; the support ends at delta so there is no far part.
    const double m_real = kernel_.delta() / k;
    const long m = std::lround(m_real);
    if (std::fabs(m_real - static_cast<double>(m)) > 1e-9 * std::max(1.0, m_real) || m < 1)
      throw config_error("TimeChain: delta/k must be a positive integer for the truncated kernel");
    n_cells_ = m;
  }

  std::vector<double> cell(static_cast<std::size_t>(n_cells_) + 1, 0.0);
  const double t0 = 0.0;  // families here are time-independent
  cell[0] = kernel_.restricted_moment(t0, k_) / k_;
  switch (fam) {
    case KernelFamily::fractional:
    case KernelFamily::truncated: {
      // Closed-form cell integrals; both reduce to a telescoping power sum.
      for (long j = 2; j <= n_cells_; ++j) {
        const double lo = static_cast<double>(j - 1) * k_;
        const double hi = static_cast<double>(j) * k_;
        cell[j - 1] = kernel_.tail_mass(t0, lo) - kernel_.tail_mass(t0, hi);
      }
      break;
    }
    case KernelFamily::tempered: {
      for (long j = 2; j <= n_cells_; ++j) {
        const double lo = static_cast<double>(j - 1) * k_;
        const double hi = static_cast<double>(j) * k_;
        cell[j - 1] = gk15([this](double r) { return kernel_.evaluate(0.0, r); }, lo, hi);
      }
      break;
    }
    default:
      break;
  }
  far_weight_ = (fam == KernelFamily::truncated)
                    ? 0.0
                    : kernel_.tail_mass(t0, static_cast<double>(n_cells_) * k_);
  cell[n_cells_] = far_weight_;
  total_rate_ = 0.0;
  for (double c : cell) total_rate_ += c;
  build_alias(cell, alias_prob_, alias_idx_);
}

double TimeChain::total_rate(double t) const {
  if (kernel_.family() != KernelFamily::variable_order) return total_rate_;
  const double a = kernel_.alpha_at(t);
  const double c = fractional_constant(a);
  return c * std::pow(k_, -a) * (1.0 / (1.0 - a) + 1.0 / a);
}

bool TimeChain::rate_is_position_dependent() const {
  return kernel_.family() == KernelFamily::variable_order;
}

long TimeChain::sample_far_cell(Rng& rng) const {
  // Resolve the lumped far mass into an exact cell index. For power tails the
  // per-cell weights telescope, so the conditional cell index inverts in
  // closed form; the tempered family rejects against that power-law proposal.
  const KernelFamily fam = kernel_.family();
  const double a = kernel_.alpha();
  const double n0 = static_cast<double>(n_cells_);
  for (int guard = 0; guard < 10000; ++guard) {
    const double v = rng.next_double_pos();
    const double jr = n0 * std::pow(v, -1.0 / a);
    const long j = static_cast<long>(std::ceil(jr - 1e-12));
    if (j <= n_cells_) continue;  // boundary roundoff; redraw
    if (fam == KernelFamily::fractional) return j;
    // Tempered: accept with int_cell e^{-lam r} r^{-1-a} / (e^{-lam n0 k} int_cell r^{-1-a}).
    const double lo = static_cast<double>(j - 1) * k_;
    const double hi = static_cast<double>(j) * k_;
    const double plain = fractional_constant(a) / a * (std::pow(lo, -a) - std::pow(hi, -a));
    const double exact = gk15([this](double r) { return kernel_.evaluate(0.0, r); }, lo, hi);
    const double accept = exact / (plain * std::exp(-kernel_.lambda() * n0 * k_));
    if (rng.next_double() < accept) return j;
  }
  throw numerical_error("TimeChain: far-tail rejection sampling failed to accept");
}

long TimeChain::sample_jump(long position_cells, Rng& rng) const {
  const KernelFamily fam = kernel_.family();
  if (fam != KernelFamily::variable_order) {
    const long idx = sample_alias(alias_prob_, alias_idx_, rng);
    if (idx < n_cells_) return idx + 1;
    return sample_far_cell(rng);
  }
  // Variable order: invert the telescoped cell CDF with alpha frozen at the
  // current position.
  const double t = static_cast<double>(position_cells) * k_;
  const double a = kernel_.alpha_at(t);
  const double c = fractional_constant(a);
  const double w1 = c * std::pow(k_, -a) / (1.0 - a);
  const double tail_scale = c * std::pow(k_, -a) / a;  // sum over cells 2..inf
  const double total = w1 + tail_scale;
  const double v = rng.next_double() * total;
  if (v < w1) return 1;
  const double rem = 1.0 - (v - w1) / tail_scale;  // = J^{-a} at the boundary
  if (rem <= 0.0) return position_cells + 1;       // beyond double resolution: crosses
  const double jr = std::pow(rem, -1.0 / a);
  long j = static_cast<long>(std::ceil(jr - 1e-12));
  if (j < 2) j = 2;
  return j;
}

}  // namespace nlmc
