#include "nlmc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlmc/errors.hpp"
#include "nlmc/quadrature.hpp"
#include "nlmc/special.hpp"

namespace nlmc {

namespace {

void check_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("kernel order alpha must lie in (0,1)");
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::domain_error(std::string(name) + " must be positive");
}

}  // namespace

Kernel Kernel::fractional(double alpha) {
  check_order(alpha);
  Kernel k;
  k.family_ = KernelFamily::fractional;
  k.alpha_ = alpha;
  k.c_alpha_ = fractional_constant(alpha);
  return k;
}

Kernel Kernel::truncated(double alpha, double delta) {
  check_order(alpha);
  check_positive(delta, "delta");
  Kernel k;
  k.family_ = KernelFamily::truncated;
  k.alpha_ = alpha;
  k.delta_ = delta;
  return k;
}

Kernel Kernel::tempered(double alpha, double lambda_t) {
  check_order(alpha);
  check_positive(lambda_t, "lambda_t");
  Kernel k;
  k.family_ = KernelFamily::tempered;
  k.alpha_ = alpha;
  k.lambda_ = lambda_t;
  k.c_alpha_ = fractional_constant(alpha);
  return k;
}

Kernel Kernel::variable_order(std::function<double(double)> alpha_of_t, double t_probe_lo,
                              double t_probe_hi) {
  if (!alpha_of_t) throw std::domain_error("variable_order kernel needs a callable alpha(t)");
  Kernel k;
  k.family_ = KernelFamily::variable_order;
  k.alpha_fn_ = std::move(alpha_of_t);
  k.probe_lo_ = t_probe_lo;
  k.probe_hi_ = t_probe_hi;
  return k;
}

Kernel Kernel::atomic(double lambda, double delta) {
  check_positive(lambda, "lambda");
  check_positive(delta, "delta");
  Kernel k;
  k.family_ = KernelFamily::atomic;
  k.lambda_ = lambda;
  k.delta_ = delta;
  return k;
}

double Kernel::alpha_at(double t) const {
  if (family_ != KernelFamily::variable_order) return alpha_;
  const double a = alpha_fn_(t);
  check_order(a);
  return a;
}

double Kernel::evaluate(double t, double r) const {
  if (family_ == KernelFamily::atomic)
    throw unsupported_operation("atomic kernel is a measure, not a density");
  if (!(r > 0.0)) throw std::domain_error("evaluate: jump size r must be positive");
  switch (family_) {
    case KernelFamily::fractional:
      return c_alpha_ * std::pow(r, -alpha_ - 1.0);
    case KernelFamily::truncated:
      if (r >= delta_) return 0.0;
      return (1.0 - alpha_) * std::pow(delta_, alpha_ - 1.0) * std::pow(r, -alpha_ - 1.0);
    case KernelFamily::tempered:
      return c_alpha_ * std::exp(-lambda_ * r) * std::pow(r, -alpha_ - 1.0);
    case KernelFamily::variable_order: {
      const double a = alpha_at(t);
      return fractional_constant(a) * std::pow(r, -a - 1.0);
    }
    default:
      throw unsupported_operation("unreachable kernel family");
  }
}

double Kernel::tail_mass(double t, double a) const {
  if (!(a > 0.0)) throw std::domain_error("tail_mass: lower limit must be positive");
  switch (family_) {
    case KernelFamily::fractional:
      return c_alpha_ * std::pow(a, -alpha_) / alpha_;
    case KernelFamily::truncated: {
      if (a >= delta_) return 0.0;
      const double scale = (1.0 - alpha_) * std::pow(delta_, alpha_ - 1.0) / alpha_;
      return scale * (std::pow(a, -alpha_) - std::pow(delta_, -alpha_));
    }
    case KernelFamily::tempered:
      // int_a^inf e^{-lam r} r^{-1-alpha} dr = lam^alpha * Gamma(-alpha, lam a)
      return c_alpha_ * std::pow(lambda_, alpha_) * upper_incomplete_gamma_neg(alpha_, lambda_ * a);
    case KernelFamily::variable_order: {
      QuadOptions opt;
      opt.rel_tol = 1e-10;
      return integrate_upper([this, t](double r) { return evaluate(t, r); }, a, opt);
    }
    case KernelFamily::atomic:
      return a <= delta_ ? lambda_ : 0.0;
  }
  throw unsupported_operation("unreachable kernel family");
}

double Kernel::restricted_moment(double t, double k) const {
  if (!(k > 0.0)) throw std::domain_error("restricted_moment: k must be positive");
  switch (family_) {
    case KernelFamily::fractional:
      return c_alpha_ * std::pow(k, 1.0 - alpha_) / (1.0 - alpha_);
    case KernelFamily::truncated: {
      const double kk = std::min(k, delta_);
      return std::pow(delta_, alpha_ - 1.0) * std::pow(kk, 1.0 - alpha_);
    }
    case KernelFamily::tempered:
      // int_0^k e^{-lam r} r^{-alpha} dr = lam^{alpha-1} * gamma(1-alpha, lam k)
      return c_alpha_ * std::pow(lambda_, alpha_ - 1.0) *
             (std::tgamma(1.0 - alpha_) - upper_incomplete_gamma(1.0 - alpha_, lambda_ * k));
    case KernelFamily::variable_order: {
      const double a = alpha_at(t);
      return fractional_constant(a) * std::pow(k, 1.0 - a) / (1.0 - a);
    }
    case KernelFamily::atomic:
      return k >= delta_ ? lambda_ * delta_ : 0.0;
  }
  throw unsupported_operation("unreachable kernel family");
}

H0Report Kernel::h0_report() const {
  H0Report rep;
  switch (family_) {
    case KernelFamily::fractional:
      rep.moment_integral = c_alpha_ / (1.0 - alpha_);
      rep.tail_integral = c_alpha_ / alpha_;
      rep.lower_bound_ok = true;
      return rep;
    case KernelFamily::truncated: {
      const double scale = (1.0 - alpha_) * std::pow(delta_, alpha_ - 1.0);
      if (delta_ <= 1.0) {
        rep.moment_integral = 1.0;  // exact first moment by the kernel normalization
        rep.tail_integral = 0.0;
      } else {
        rep.moment_integral = scale / (1.0 - alpha_);  // int_0^1 r^{-alpha} scaled
        rep.tail_integral = scale / alpha_ * (1.0 - std::pow(delta_, -alpha_));
      }
      rep.lower_bound_ok = true;
      return rep;
    }
    case KernelFamily::tempered:
      rep.moment_integral = restricted_moment(0.0, 1.0);
      rep.tail_integral = tail_mass(0.0, 1.0);
      rep.lower_bound_ok = true;
      return rep;
    case KernelFamily::variable_order: {
      // sup over t is taken on a probe grid; adequate for smooth alpha(t).
      auto sup_rho = [this](double r) {
        const int n_probe = 257;
        double best = 0.0;
        for (int i = 0; i < n_probe; ++i) {
          const double t = probe_lo_ + (probe_hi_ - probe_lo_) * i / (n_probe - 1);
          best = std::max(best, evaluate(t, r));
        }
        return best;
      };
      QuadOptions opt;
      opt.rel_tol = 1e-8;
      rep.moment_integral = integrate([&sup_rho](double r) { return r * sup_rho(r); }, 0.0, 1.0, opt);
      rep.tail_integral = integrate_upper(sup_rho, 1.0, opt);
      rep.lower_bound_ok = true;
      return rep;
    }
    case KernelFamily::atomic:
      rep.moment_integral = delta_ <= 1.0 ? lambda_ * delta_ : 0.0;
      rep.tail_integral = delta_ > 1.0 ? lambda_ : 0.0;
      rep.lower_bound_ok = false;  // an atom has no density near r = 0
      return rep;
  }
  throw unsupported_operation("unreachable kernel family");
}

std::string Kernel::describe() const {
  std::ostringstream os;
  switch (family_) {
    case KernelFamily::fractional:
      os << "fractional(alpha=" << alpha_ << ")";
      break;
    case KernelFamily::truncated:
      os << "truncated(alpha=" << alpha_ << ", delta=" << delta_ << ")";
      break;
    case KernelFamily::tempered:
      os << "tempered(alpha=" << alpha_ << ", lambda_t=" << lambda_ << ")";
      break;
    case KernelFamily::variable_order:
      os << "variable-order(alpha(t))";
      break;
    case KernelFamily::atomic:
      os << "atomic(lambda=" << lambda_ << ", delta=" << delta_ << ")";
      break;
  }
  return os.str();
}

}  // namespace nlmc
