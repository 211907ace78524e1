#ifndef NLMC_PROBLEM_HPP
#define NLMC_PROBLEM_HPP

#include <functional>
#include <optional>

#include "nlmc/kernel.hpp"
#include "nlmc/space_walk.hpp"

namespace nlmc {

using DataFn = std::function<double(double, double)>;  // (t, x)

// One initial-boundary value problem on (0,T] x (-1,1):
//   D u - u_xx = f,  u(t, +-1) = 0,  u = phi on (-infty, 0] x (-1,1),
// where D is the nonlocal time derivative induced by `kernel`. phi is the
// historical datum (consumed at t <= 0); both data vanish on the boundary.
// Empty std::function means identically zero. time_step overrides the mesh
// coupling used by the Monte Carlo estimator when set.
struct ProblemData {
  Kernel kernel = Kernel::fractional(0.5);
  DataFn phi;
  DataFn f;
  double T = 0.0;
  LatticeConfig lattice;
  std::optional<double> time_step;
};

}  // namespace nlmc

#endif  // NLMC_PROBLEM_HPP
