#ifndef NLMC_QUADRATURE_HPP
#define NLMC_QUADRATURE_HPP

#include <functional>

namespace nlmc {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 20000;
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
// Throws numerical_error when the interval budget is exhausted before the
// tolerance is met; the message carries the worst remaining subinterval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

// Integral over (a, +inf) via the rational map r = a + u/(1-u).
double integrate_upper(const std::function<double(double)>& f, double a,
                       const QuadOptions& opt = {});

// Fixed 15-point Gauss-Kronrod rule on [a,b] (no adaptivity, no error control).
double gk15(const std::function<double(double)>& f, double a, double b);

}  // namespace nlmc

#endif  // NLMC_QUADRATURE_HPP
