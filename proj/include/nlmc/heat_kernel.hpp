#ifndef NLMC_HEAT_KERNEL_HPP
#define NLMC_HEAT_KERNEL_HPP

#include <functional>

#include "nlmc/kernel.hpp"

namespace nlmc {

// One-sided alpha-stable subordinator of order alpha in (0,1), normalized by
// E[exp(-q X(1))] = exp(-q^alpha).
struct StableParams {
  double alpha = 0.5;
};

// Density g_alpha of X(1) at x > 0. alpha = 1/2 short-circuits to the closed
// form (2 sqrt(pi))^{-1} x^{-3/2} exp(-1/(4x)); other orders evaluate the
// single-integral representation over (0, pi) in log space.
double stable_density(const StableParams& params, double x);

// Integral representation unconditionally (used to validate the closed form).
double stable_density_generic(double alpha, double x);

// d/ds P[X(s) >= t] = alpha^{-1} t s^{-1-1/alpha} g_alpha(t s^{-1/alpha}):
// the density in s of the first-passage level, i.e. of tau_0(t).
double subordinator_crossing_density(const StableParams& params, double t, double s);

// Heat kernel of the historical term for the standard fractional kernel:
//   H_{t,x}(r,y) = int_0^t rho(z, z-r) ( int_0^inf p^Omega_s(x,y) p_s(t,z) ds ) dz
// with p_s(t,.) the density of t - X(s). Requires t > 0, r < 0, x,y interior.
double heat_kernel_H(const Kernel& fractional_kernel, double t, double x, double r, double y);

// int_{-inf}^0 int_{-1}^1 H_{t,x}(r,y) dy dr = P[tau_0(t) < tau_Omega(x)].
// The r- and y-marginals of the integrand are exact (kernel tail mass and
// killed-walk survival); the remaining (z,s) double integral is adaptive.
double heat_kernel_total_mass(const Kernel& fractional_kernel, double t, double x);

// int int time_factor(r) * space_profile(y) * H_{t,x}(r,y) dy dr for separable
// data. space_profile is projected on the first n_modes eigenfunctions, so the
// result is exact for low-mode profiles and spectrally accurate for smooth ones.
double heat_kernel_weighted_integral(const Kernel& fractional_kernel, double t, double x,
                                     const std::function<double(double)>& time_factor,
                                     const std::function<double(double)>& space_profile,
                                     int n_modes = 64);

namespace heat_detail {
// Killed-walk survival P[s < tau_Omega(x)] on (-1,1); eigen-series for large s,
// reflected error functions for small s.
double survival(double x, double s);
// Killed transition density usable for every s > 0 (series / image charges).
double killed_kernel_any_s(double x, double y, double s);
}  // namespace heat_detail

}  // namespace nlmc

#endif  // NLMC_HEAT_KERNEL_HPP
