#include "nlmc/special.hpp"

#include <cmath>
#include <stdexcept>

#include "nlmc/errors.hpp"

namespace nlmc {

double fractional_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  return std::exp(std::log(alpha) - std::lgamma(1.0 - alpha));
}

namespace {

// Regularized lower incomplete gamma P(s,x) by series, for x < s+1.
double lower_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  double ap = s;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized upper incomplete gamma Q(s,x) by continued fraction, x >= s+1.
double upper_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double upper_incomplete_gamma(double s, double x) {
  if (!(s > 0.0)) throw std::domain_error("upper_incomplete_gamma: s must be positive");
  if (x < 0.0) throw std::domain_error("upper_incomplete_gamma: x must be nonnegative");
  const double gamma_s = std::tgamma(s);
  if (x == 0.0) return gamma_s;
  if (x < s + 1.0) return gamma_s * (1.0 - lower_series(s, x));
  return gamma_s * upper_cf(s, x);
}

double upper_incomplete_gamma_neg(double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  const double g1ma = upper_incomplete_gamma(1.0 - alpha, x);
  return (std::exp(-x - alpha * std::log(x)) - g1ma) / alpha;
}

}  // namespace nlmc
