#include "nlmc/heat_kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nlmc/errors.hpp"
#include "nlmc/quadrature.hpp"
#include "nlmc/space_walk.hpp"
#include "nlmc/special.hpp"

namespace nlmc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("stable order must lie in (0,1)");
}

double closed_form_half(double x) {
  return 0.5 / std::sqrt(kPi) * std::pow(x, -1.5) * std::exp(-0.25 / x);
}

// log of the Zolotarev-type integrand factor
//   A(u) = (sin(alpha u)/sin u)^{alpha/(1-alpha)} * sin((1-alpha)u)/sin(u).
double log_A(double alpha, double u) {
  const double ls = std::log(std::sin(u));
  return alpha / (1.0 - alpha) * (std::log(std::sin(alpha * u)) - ls) +
         std::log(std::sin((1.0 - alpha) * u)) - ls;
}

}  // namespace

double stable_density_generic(double alpha, double x) {
  check_order(alpha);
  if (!(x > 0.0)) throw std::domain_error("stable_density: x must be positive");
  const double expo = alpha / (1.0 - alpha);
  const double c = std::pow(x, -expo);
  auto integrand = [alpha, c](double u) {
    const double la = log_A(alpha, u);
    if (la > 690.0) return 0.0;  // exp would overflow; the damping factor wins
    const double arg = la - c * std::exp(la);
    return arg < -745.0 ? 0.0 : std::exp(arg);
  };
  QuadOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-300;
  const double integral = integrate(integrand, 1e-14, kPi - 1e-14, opt);
  return alpha / (kPi * (1.0 - alpha)) * std::pow(x, -1.0 / (1.0 - alpha)) * integral;
}

double stable_density(const StableParams& params, double x) {
  check_order(params.alpha);
  if (!(x > 0.0)) throw std::domain_error("stable_density: x must be positive");
  if (std::fabs(params.alpha - 0.5) < 1e-12) return closed_form_half(x);
  return stable_density_generic(params.alpha, x);
}

double subordinator_crossing_density(const StableParams& params, double t, double s) {
  if (!(t > 0.0) || !(s > 0.0))
    throw std::domain_error("subordinator_crossing_density: t and s must be positive");
  const double inv_a = 1.0 / params.alpha;
  const double w = t * std::pow(s, -inv_a);
  return inv_a * t * std::pow(s, -1.0 - inv_a) * stable_density(params, w);
}

namespace heat_detail {

namespace {

double norm_cdf(double z) { return 0.5 * std::erfc(-z / 1.4142135623730951); }

double gauss_pdf(double d, double sigma) {
  const double z = d / sigma;
  return std::exp(-0.5 * z * z) / (sigma * 2.5066282746310002);
}

}  // namespace

double survival(double x, double s) {
  if (!(s > 0.0)) throw std::domain_error("survival: s must be positive");
  if (std::fabs(x) >= 1.0) return 0.0;
  if (s >= 0.05) {
    double acc = 0.0;
    for (int n = 40; n >= 1; --n) {
      const double lam = 0.25 * kPi * kPi * n * n;
      const double coef = 2.0 / (n * kPi) * (1.0 - std::pow(-1.0, n));
      acc += std::exp(-lam * s) * coef * std::sin(0.5 * n * kPi * (x + 1.0));
    }
    return acc;
  }
  // Reflected normal CDFs; the position at operational s is N(x, 2s).
  const double sigma = std::sqrt(2.0 * s);
  double acc = 0.0;
  for (int m = -3; m <= 3; ++m) {
    const double shift = 4.0 * m;
    acc += norm_cdf((1.0 - x + shift) / sigma) - norm_cdf((-1.0 - x + shift) / sigma);
    acc -= norm_cdf((1.0 + x + 2.0 + shift) / sigma) - norm_cdf((-1.0 + x + 2.0 + shift) / sigma);
  }
  return acc;
}

double killed_kernel_any_s(double x, double y, double s) {
  if (s >= 0.05) return killed_heat_kernel(x, y, s);
  const double sigma = std::sqrt(2.0 * s);
  double acc = 0.0;
  for (int m = -3; m <= 3; ++m) {
    const double shift = 4.0 * m;
    acc += gauss_pdf(y - x + shift, sigma) - gauss_pdf(y + x + 2.0 + shift, sigma);
  }
  return acc;
}

}  // namespace heat_detail

namespace {

void check_fractional(const Kernel& kernel) {
  if (kernel.family() != KernelFamily::fractional)
    throw unsupported_operation(
        "heat kernel formulas are restricted to the time-independent fractional kernel");
}

// Upper integration limit in u for int_0^inf F(s(u)) g(u) u^{-alpha} du with
// bounded F: beyond it the power tail of g contributes less than ~1e-9.
double u_cutoff(double alpha) {
  const double c = fractional_constant(alpha);
  return std::pow(1.5 * c / (2.0 * alpha * 1e-9), 1.0 / (2.0 * alpha));
}

// int_0^inf F((w/u)^alpha) g_alpha(u) u^{-alpha} du, the s-integral of
// F(s) p_s(t, t-w) after the substitution u = w s^{-1/alpha}.
double subordinated_integral(double alpha, double w,
                             const std::function<double(double)>& F, double rel_tol) {
  const StableParams sp{alpha};
  auto integrand = [&](double u) {
    const double g = stable_density(sp, u);
    if (g <= 0.0) return 0.0;
    const double s = std::pow(w / u, alpha);
    return F(s) * g * std::pow(u, -alpha);
  };
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-14;
  const double ucut = u_cutoff(alpha);
  // Split at u = 1 where g turns from the exponential rise to the power tail.
  return integrate(integrand, 1e-12, 1.0, opt) + integrate(integrand, 1.0, ucut, opt);
}

}  // namespace

double heat_kernel_H(const Kernel& fractional_kernel, double t, double x, double r, double y) {
  check_fractional(fractional_kernel);
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_H: t must be positive");
  if (!(r < 0.0)) throw std::domain_error("heat_kernel_H: history time r must be negative");
  if (std::fabs(x) >= 1.0 || std::fabs(y) >= 1.0)
    throw std::domain_error("heat_kernel_H: x and y must be interior points");
  const double alpha = fractional_kernel.alpha();
  auto outer = [&](double z) {
    const double w = t - z;
    auto F = [&](double s) { return heat_detail::killed_kernel_any_s(x, y, s); };
    const double inner = subordinated_integral(alpha, w, F, 1e-7);
    return fractional_kernel.evaluate(z, z - r) * alpha * std::pow(w, alpha - 1.0) * inner;
  };
  QuadOptions opt;
  opt.rel_tol = 1e-6;
  opt.abs_tol = 1e-12;
  return integrate(outer, 0.0, t, opt);
}

double heat_kernel_total_mass(const Kernel& fractional_kernel, double t, double x) {
  check_fractional(fractional_kernel);
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_total_mass: t must be positive");
  const double alpha = fractional_kernel.alpha();
  auto outer = [&](double z) {
    const double w = t - z;
    auto F = [&](double s) { return heat_detail::survival(x, s); };
    const double inner = subordinated_integral(alpha, w, F, 1e-7);
    return fractional_kernel.tail_mass(z, z) * alpha * std::pow(w, alpha - 1.0) * inner;
  };
  QuadOptions opt;
  opt.rel_tol = 1e-6;
  opt.abs_tol = 1e-12;
  return integrate(outer, 0.0, t, opt);
}

double heat_kernel_weighted_integral(const Kernel& fractional_kernel, double t, double x,
                                     const std::function<double(double)>& time_factor,
                                     const std::function<double(double)>& space_profile,
                                     int n_modes) {
  check_fractional(fractional_kernel);
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_weighted_integral: t must be positive");
  const double alpha = fractional_kernel.alpha();

  // Project the space profile on the Dirichlet eigenfunctions once.
  std::vector<double> coef(static_cast<std::size_t>(n_modes) + 1, 0.0);
  QuadOptions proj;
  proj.rel_tol = 1e-10;
  proj.abs_tol = 1e-14;
  for (int n = 1; n <= n_modes; ++n)
    coef[n] = integrate(
        [&](double y) { return space_profile(y) * std::sin(0.5 * n * kPi * (y + 1.0)); }, -1.0,
        1.0, proj);

  auto modes_at = [&](double s) {
    double acc = 0.0;
    for (int n = n_modes; n >= 1; --n) {
      if (coef[n] == 0.0) continue;
      const double lam = 0.25 * kPi * kPi * n * n;
      acc += coef[n] * std::exp(-lam * s) * std::sin(0.5 * n * kPi * (x + 1.0));
    }
    return acc;
  };

  auto outer = [&](double z) {
    const double w = t - z;
    const double inner = subordinated_integral(alpha, w, modes_at, 1e-7);
    // r-marginal: int_{-inf}^0 time_factor(r) rho(z, z-r) dr.
    QuadOptions ropt;
    ropt.rel_tol = 1e-8;
    ropt.abs_tol = 1e-13;
    const double rmass = integrate_upper(
        [&](double v) { return time_factor(z - v) * fractional_kernel.evaluate(z, v); }, z, ropt);
    return rmass * alpha * std::pow(w, alpha - 1.0) * inner;
  };
  QuadOptions opt;
  opt.rel_tol = 1e-6;
  opt.abs_tol = 1e-12;
  return integrate(outer, 0.0, t, opt);
}

}  // namespace nlmc
