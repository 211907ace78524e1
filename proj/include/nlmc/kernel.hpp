#ifndef NLMC_KERNEL_HPP
#define NLMC_KERNEL_HPP

#include <functional>
#include <string>

namespace nlmc {

enum class KernelFamily { fractional, truncated, tempered, variable_order, atomic };

// Numerical summary of the standing integrability hypothesis on the kernel:
// moment_integral + tail_integral = int_0^inf (1 ^ r) sup_t rho(t,r) dr, split at r=1,
// and lower_bound_ok records whether rho(t,r) >= gamma > 0 near r = 0.
struct H0Report {
  double moment_integral = 0.0;
  double tail_integral = 0.0;
  bool lower_bound_ok = false;
};

// Jump intensity rho(t,r) of the decreasing time process: the rate of negative
// jumps of size r at time t. Atomic kernels are measures (lambda * Dirac at
// delta) rather than densities; operations needing a density reject them.
// Immutable after construction; safe to share across threads.
class Kernel {
 public:
  static Kernel fractional(double alpha);
  static Kernel truncated(double alpha, double delta);
  static Kernel tempered(double alpha, double lambda_t);
  // alpha_of_t must map every probed t into (0,1); the probe interval is used
  // where sup_t is needed numerically (h0_report).
  static Kernel variable_order(std::function<double(double)> alpha_of_t,
                               double t_probe_lo = 0.0, double t_probe_hi = 1.0);
  static Kernel atomic(double lambda, double delta);

  KernelFamily family() const { return family_; }
  double alpha() const { return alpha_; }
  double alpha_at(double t) const;
  double delta() const { return delta_; }
  double lambda() const { return lambda_; }
  double probe_lo() const { return probe_lo_; }
  double probe_hi() const { return probe_hi_; }

  // Density value rho(t,r); zero outside the truncated support.
  double evaluate(double t, double r) const;

  // int_a^inf rho(t,r) dr; for the atomic measure, lambda * 1{a <= delta}.
  double tail_mass(double t, double a) const;

  // int_0^k r rho(t,r) dr (the first-cell moment of the jump discretization).
  double restricted_moment(double t, double k) const;

  H0Report h0_report() const;

  std::string describe() const;

 private:
  Kernel() = default;
  KernelFamily family_ = KernelFamily::fractional;
  double alpha_ = 0.0;    // order, all families except atomic
  double delta_ = 0.0;    // truncation horizon / atom location
  double lambda_ = 0.0;   // tempering rate or atom weight
  double c_alpha_ = 0.0;  // cached -1/Gamma(-alpha)
  std::function<double(double)> alpha_fn_;
  double probe_lo_ = 0.0, probe_hi_ = 1.0;
};

}  // namespace nlmc

#endif  // NLMC_KERNEL_HPP
