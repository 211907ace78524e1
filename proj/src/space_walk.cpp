#include "nlmc/space_walk.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlmc/errors.hpp"

namespace nlmc {

LatticeConfig LatticeConfig::with_cells(int M) {
  if (M < 2 || M % 2 != 0) throw config_error("lattice: M must be an even integer >= 2");
  return {M, 2.0 / static_cast<double>(M)};
}

LatticeConfig LatticeConfig::with_mesh(double h) {
  if (!(h > 0.0)) throw config_error("lattice: h must be positive");
  const double m_real = 2.0 / h;
  const int M = static_cast<int>(std::lround(m_real));
  if (std::fabs(m_real - M) > 1e-9 * m_real) {
    std::ostringstream msg;
    msg << "lattice: h = " << h << " does not divide the interval (-1,1) evenly";
    throw config_error(msg.str());
  }
  return with_cells(M);
}

int LatticeConfig::index_of(double x) const {
  const double j_real = (x + 1.0) / h;
  const int j = static_cast<int>(std::lround(j_real));
  if (j < 0 || j > M || std::fabs(j_real - j) > 1e-9 * M)
    throw config_error("lattice: point is not a grid node");
  return j;
}

SpaceExitSample step_walk(const LatticeConfig& cfg, int start_index, long max_steps, Rng& rng,
                          const IndexVisitor* visitor) {
  if (start_index < 0 || start_index > cfg.M)
    throw std::domain_error("step_walk: start index outside the lattice");
  SpaceExitSample out;
  int j = start_index;
  if (visitor) (*visitor)(j);
  if (j == 0 || j == cfg.M) {
    out.exited = true;
    out.final_index = j;
    out.exit_step = 0;
    return out;
  }
  for (long step = 1; step <= max_steps; ++step) {
    j += (rng.next_u64() & 1ULL) ? 1 : -1;
    if (visitor) (*visitor)(j);
    if (j == 0 || j == cfg.M) {
      out.exited = true;
      out.final_index = j;
      out.exit_step = step;
      return out;
    }
  }
  out.exited = false;
  out.final_index = j;
  out.exit_step = max_steps;
  return out;
}

double killed_heat_kernel(double x, double y, double s, int n_terms) {
  if (!(s > 0.0)) throw std::domain_error("killed_heat_kernel: s must be positive");
  if (n_terms < 1) throw std::domain_error("killed_heat_kernel: n_terms must be >= 1");
  if (s < 1e-4)
    throw numerical_error("killed_heat_kernel: eigenfunction series unusable below s = 1e-4");
  int n_eff = n_terms;
  if (s < 0.01) {
    // Keep the dropped terms below double precision: lambda_n * s > 46.
    const double need = std::ceil(2.0 / 3.14159265358979323846 * std::sqrt(46.0 / s));
    n_eff = std::max(n_eff, static_cast<int>(need));
  }
  const double pi = 3.14159265358979323846;
  double acc = 0.0;
  for (int n = n_eff; n >= 1; --n) {
    const double lam = 0.25 * pi * pi * static_cast<double>(n) * static_cast<double>(n);
    // sin*sin first: keeps the value bit-identical under (x,y) exchange
    const double modes = std::sin(0.5 * n * pi * (x + 1.0)) * std::sin(0.5 * n * pi * (y + 1.0));
    acc += std::exp(-lam * s) * modes;
  }
  return acc;
}

}  // namespace nlmc
