#ifndef NLMC_SPACE_WALK_HPP
#define NLMC_SPACE_WALK_HPP

#include <functional>

#include "nlmc/rng.hpp"

namespace nlmc {

// Uniform lattice on Omega = (-1,1): M cells of width h = 2/M, grid points
// x_j = j*h - 1 for j = 0..M. M must be an even integer >= 2 so that x = 0 is
// a grid point and the boundary is exactly {x_0, x_M}.
struct LatticeConfig {
  int M = 0;
  double h = 0.0;

  static LatticeConfig with_cells(int M);
  static LatticeConfig with_mesh(double h);
  double point(int j) const { return static_cast<double>(j) * h - 1.0; }
  int index_of(double x) const;  // nearest grid index, validated
};

struct SpaceExitSample {
  long exit_step = 0;    // first step at which index 0 or M is reached
  int final_index = 0;   // 0 or M when exited
  bool exited = false;   // false if max_steps was hit first
};

using IndexVisitor = std::function<void(int)>;

// Symmetric +-1 walk from an interior index until the boundary is hit (or the
// step budget runs out). Starting on the boundary exits immediately in 0 steps.
SpaceExitSample step_walk(const LatticeConfig& cfg, int start_index, long max_steps, Rng& rng,
                          const IndexVisitor* visitor = nullptr);

// Transition density of Brownian motion on (-1,1) killed at the boundary,
// generated by the full Laplacian d^2/dx^2:
//   p_s(x,y) = sum_n e^{-lambda_n s} phi_n(x) phi_n(y),
//   lambda_n = (n pi / 2)^2, phi_n(x) = sin(n pi (x+1)/2)  (unit L2 norm).
// n_terms grows automatically for s < 0.01; s below 1e-4 is refused since the
// eigenfunction series converges too slowly there.
double killed_heat_kernel(double x, double y, double s, int n_terms = 200);

}  // namespace nlmc

#endif  // NLMC_SPACE_WALK_HPP
