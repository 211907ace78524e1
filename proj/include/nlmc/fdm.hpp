#ifndef NLMC_FDM_HPP
#define NLMC_FDM_HPP

#include <vector>

#include "nlmc/problem.hpp"

namespace nlmc {

// Space-time grid of solution values, rows indexed by time level 0..N and
// columns by grid index 0..M. Boundary columns are identically zero and row 0
// carries phi(0, x_j). Immutable once a solver returns it.
struct Field {
  int N = 0;
  int M = 0;
  double h = 0.0;
  double k = 0.0;
  double T = 0.0;
  std::vector<double> values;  // (N+1) x (M+1) row-major

  double at(int n, int j) const { return values[static_cast<std::size_t>(n) * (M + 1) + j]; }
  const double* row(int n) const { return values.data() + static_cast<std::size_t>(n) * (M + 1); }
  int time_index(double t) const;  // nearest row, validated
};

// Implicit scheme for the truncated-kernel problem:
//   (1/k^alpha)(omega_0 u^n - sum_{j=1}^m omega_j u^{n-j}) - D_xx u^n = f^n,
// with u^{n-j} read from the historical datum phi when n-j <= 0 and D_xx the
// three-point central difference. One tridiagonal solve per step.
Field solve_nonlocal_fd(const ProblemData& problem, int N, int M);

// Dirac-kernel scheme: lambda (u^n - u^{n - delta/k}) - D_xx u^n = f^n.
Field solve_atomic_fd(const ProblemData& problem, int N, int M);

// Semi-analytic oracle for the atomic kernel: the equation decouples into
// elliptic problems per delta-slice,
//   lambda v - v'' = f(t') + lambda u(t' - delta),
// solved recursively by a second-order tridiagonal discretization on a fine
// grid. No time-stepping error. Returns the profile on the x-grid at time t.
std::vector<double> exact_atomic_solution(const ProblemData& problem, double t, int M);

// Tridiagonal solve (Thomas algorithm, no pivoting): diagonal `diag`,
// symmetric off-diagonal `off`, right-hand side overwritten with the solution.
void solve_tridiagonal_constant(double diag, double off, std::vector<double>& rhs);

}  // namespace nlmc

#endif  // NLMC_FDM_HPP
