#ifndef NLMC_SPECIAL_HPP
#define NLMC_SPECIAL_HPP

namespace nlmc {

// c_alpha = -1/Gamma(-alpha) = alpha/Gamma(1-alpha), evaluated in log space.
double fractional_constant(double alpha);

// Upper incomplete gamma Gamma(s,x) = int_x^inf t^{s-1} e^{-t} dt, s in (0,1], x >= 0.
double upper_incomplete_gamma(double s, double x);

// Gamma(-alpha, x) for alpha in (0,1), x > 0, via the recurrence
// Gamma(1-alpha,x) = -alpha*Gamma(-alpha,x) + x^{-alpha} e^{-x}.
double upper_incomplete_gamma_neg(double alpha, double x);

}  // namespace nlmc

#endif  // NLMC_SPECIAL_HPP
