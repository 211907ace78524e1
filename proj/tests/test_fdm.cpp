#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nlmc/config.hpp"
#include "nlmc/errors.hpp"
#include "nlmc/fdm.hpp"
#include "nlmc/feynman_kac.hpp"
#include "nlmc/time_walk.hpp"

using namespace nlmc;

namespace {

ProblemData example_a(double T, int M, Kernel kernel) {
  ProblemData p;
  p.kernel = kernel;
  p.phi = example_a_phi();
  p.T = T;
  p.lattice = LatticeConfig::with_cells(M);
  return p;
}

double sup_diff_interior(const Field& a, int na, const Field& b, int nb, int ratio) {
  double worst = 0.0;
  for (int j = 1; j < a.M; ++j)
    worst = std::max(worst, std::fabs(a.at(na, j) - b.at(nb, j * ratio)));
  return worst;
}

}  // namespace

TEST_CASE("zero data gives the zero field") {
  ProblemData p;
  p.kernel = Kernel::truncated(0.75, 0.2);
  p.T = 0.1;
  p.lattice = LatticeConfig::with_cells(20);
  const Field u = solve_nonlocal_fd(p, 50, 20);
  for (double v : u.values) CHECK(v == 0.0);

  p.kernel = Kernel::atomic(1.0, 0.2);
  const Field ua = solve_atomic_fd(p, 50, 20);
  for (double v : ua.values) CHECK(v == 0.0);
}

TEST_CASE("nonlocal scheme matches an independent implementation") {
  // Values computed with a separately written solver for example (a):
  // alpha = 0.75, delta = 0.2, T = 0.1, N = 100, M = 100.
  const ProblemData p = example_a(0.1, 100, Kernel::truncated(0.75, 0.2));
  const Field u = solve_nonlocal_fd(p, 100, 100);
  CHECK(u.at(100, 25) == doctest::Approx(-0.2122069500528225).epsilon(1e-11));
  CHECK(u.at(100, 50) == doctest::Approx(-0.07731686118172289).epsilon(1e-11));
  CHECK(u.at(100, 75) == doctest::Approx(0.04422323472148061).epsilon(1e-11));
}

TEST_CASE("forced problem matches an independent implementation") {
  ProblemData p;
  p.kernel = Kernel::truncated(0.75, 0.2);
  p.f = example_b_forcing();
  p.T = 0.1;
  p.lattice = LatticeConfig::with_cells(100);
  const Field u = solve_nonlocal_fd(p, 100, 100);
  CHECK(u.at(100, 25) == doctest::Approx(0.029885848894202087).epsilon(1e-11));
  CHECK(u.at(100, 50) == doctest::Approx(0.00885146496106012).epsilon(1e-11));
  CHECK(u.at(100, 75) == doctest::Approx(0.009295874461649228).epsilon(1e-11));
}

TEST_CASE("scheme residual vanishes at solved levels") {
  const ProblemData p = example_a(0.1, 60, Kernel::truncated(0.75, 0.2));
  const int N = 40, M = 60;
  const Field u = solve_nonlocal_fd(p, N, M);
  const JumpWeights w = compute_weights(0.75, 0.2, u.k);
  const double ka = std::pow(u.k, 0.75);
  for (int n : {1, 7, 40}) {
    for (int j : {1, 17, 30, 59}) {
      double hist = 0.0;
      for (int i = 1; i <= w.m; ++i) {
        const int lvl = n - i;
        const double x = u.h * j - 1.0;
        hist += w.omega[i] * (lvl >= 0 ? u.at(lvl, j) : p.phi(lvl * u.k, x));
      }
      const double dxx = (u.at(n, j + 1) - 2.0 * u.at(n, j) + u.at(n, j - 1)) / (u.h * u.h);
      const double residual = (w.omega[0] * u.at(n, j) - hist) / ka - dxx;
      CHECK(std::fabs(residual) < 1e-9 * (1.0 + std::fabs(u.at(n, j)) / (u.k * u.k)));
    }
  }
}

TEST_CASE("self-convergence under mesh refinement") {
  const Kernel kernel = Kernel::truncated(0.75, 0.2);
  const ProblemData p50 = example_a(0.1, 50, kernel);
  const ProblemData p100 = example_a(0.1, 100, kernel);
  const ProblemData p200 = example_a(0.1, 200, kernel);
  const Field u1 = solve_nonlocal_fd(p50, 50, 50);
  const Field u2 = solve_nonlocal_fd(p100, 100, 100);
  const Field u3 = solve_nonlocal_fd(p200, 200, 200);
  const double d12 = sup_diff_interior(u1, 50, u2, 100, 2);
  const double d23 = sup_diff_interior(u2, 100, u3, 200, 2);
  CHECK(d23 < d12);
  CHECK(d12 < 0.05);
}

TEST_CASE("discrete maximum principle") {
  ProblemData p;
  p.kernel = Kernel::truncated(0.6, 0.2);
  p.phi = [](double, double x) { return -(1.0 - x * x); };
  p.f = [](double, double) { return -1.0; };
  p.T = 0.2;
  p.lattice = LatticeConfig::with_cells(40);
  const Field u = solve_nonlocal_fd(p, 40, 40);
  for (double v : u.values) CHECK(v <= 1e-14);
}

TEST_CASE("grid validation errors") {
  ProblemData p = example_a(0.1, 20, Kernel::truncated(0.75, 0.07));
  CHECK_THROWS_AS(solve_nonlocal_fd(p, 33, 20), config_error);  // delta/k not integer
  p.kernel = Kernel::truncated(0.75, 0.2);
  CHECK_THROWS_AS(solve_nonlocal_fd(p, 100, 21), config_error);
  p.kernel = Kernel::fractional(0.5);
  CHECK_THROWS_AS(solve_nonlocal_fd(p, 100, 20), config_error);
  p.kernel = Kernel::atomic(1.0, 0.07);
  CHECK_THROWS_AS(solve_atomic_fd(p, 33, 20), config_error);
}

TEST_CASE("tridiagonal solver hits machine precision") {
  std::vector<double> rhs = {1.0, -2.0, 0.5, 3.0, 1.1};
  const std::vector<double> b = rhs;
  const double diag = 4.2, off = -1.1;
  solve_tridiagonal_constant(diag, off, rhs);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    double r = diag * rhs[i] - b[i];
    if (i > 0) r += off * rhs[i - 1];
    if (i + 1 < rhs.size()) r += off * rhs[i + 1];
    CHECK(std::fabs(r) < 1e-12 * std::max(1.0, std::fabs(b[i])));
  }
}

TEST_CASE("exact atomic slices: zero data and the eigen datum") {
  ProblemData p;
  p.kernel = Kernel::atomic(1.0, 0.2);
  p.T = 1.0;
  p.lattice = LatticeConfig::with_cells(10);
  for (double v : exact_atomic_solution(p, 0.13, 2000)) CHECK(v == 0.0);

  // phi(t,x) = sin(pi(x+1)/2): lambda v - v'' = lambda phi gives
  // v = phi / (1 + (pi/2)^2) on the first slice.
  p.phi = [](double, double x) { return std::sin(1.5707963267948966 * (x + 1.0)); };
  const std::vector<double> v = exact_atomic_solution(p, 0.1, 4000);
  CHECK(v[2000] == doctest::Approx(0.2884004391420009).epsilon(2e-6));
  CHECK_THROWS_AS(exact_atomic_solution(p, 0.0, 2000), std::domain_error);
  CHECK_THROWS_AS(exact_atomic_solution(p, -0.5, 2000), std::domain_error);
}

TEST_CASE("exact atomic slices match an independent implementation") {
  ProblemData p;
  p.kernel = Kernel::atomic(1.0, 0.2);
  p.phi = example_a_phi();
  p.T = 1.0;
  p.lattice = LatticeConfig::with_cells(10);
  const std::vector<double> v1 = exact_atomic_solution(p, 0.1, 4000);
  CHECK(v1[1000] == doctest::Approx(-0.041785558908196824).epsilon(1e-12));
  CHECK(v1[2000] == doctest::Approx(-0.020528214199213822).epsilon(1e-12));
  CHECK(v1[3000] == doctest::Approx(0.0012255418080554003).epsilon(1e-10));
  const std::vector<double> v2 = exact_atomic_solution(p, 0.45, 4000);
  CHECK(v2[1000] == doctest::Approx(-0.0012762489464894055).epsilon(1e-10));
  CHECK(v2[2000] == doctest::Approx(-0.0015908489755302624).epsilon(1e-10));
  CHECK(v2[3000] == doctest::Approx(-0.000991559367714888).epsilon(1e-10));
}

TEST_CASE("atomic FD converges to the exact slices") {
  ProblemData p;
  p.kernel = Kernel::atomic(1.0, 0.2);
  p.phi = example_a_phi();
  p.T = 0.45;
  p.lattice = LatticeConfig::with_cells(10);
  const std::vector<double> exact = exact_atomic_solution(p, 0.45, 2000);

  auto sup_err = [&](int N, int M) {
    const Field u = solve_atomic_fd(p, N, M);
    const int ratio = 2000 / M;
    double worst = 0.0;
    for (int j = 1; j < M; ++j)
      worst = std::max(worst, std::fabs(u.at(N, j) - exact[j * ratio]));
    return worst;
  };
  const double coarse = sup_err(90, 100);    // k = 5e-3
  const double fine = sup_err(450, 200);     // k = 1e-3
  CHECK(fine < coarse);
  CHECK(fine < 5e-3);
}

TEST_CASE("atomic solution depends only on the slice times") {
  ProblemData base;
  base.kernel = Kernel::atomic(1.0, 0.2);
  base.phi = example_a_phi();
  base.T = 1.0;
  base.lattice = LatticeConfig::with_cells(10);
  const double t = 0.45;  // slice times hit phi at t - 3 delta = -0.15
  const std::vector<double> ref = exact_atomic_solution(base, t, 1000);

  ProblemData bumped = base;
  // Vanishes at -0.15 but nowhere else nearby: the solution must not move.
  bumped.phi = [](double tt, double x) {
    const double bump = std::sin(20.0 * (tt + 0.15));
    return example_a_phi()(tt, x) + bump * (1.0 - x * x);
  };
  const std::vector<double> out = exact_atomic_solution(bumped, t, 1000);
  for (std::size_t j = 0; j < ref.size(); ++j) CHECK(out[j] == doctest::Approx(ref[j]).epsilon(1e-12));
}

TEST_CASE("atomic solution is discontinuous at t = 0 for smooth data") {
  ProblemData p;
  p.kernel = Kernel::atomic(1.0, 0.2);
  p.phi = [](double t, double x) { return std::exp(5.0 * t) * std::sin(1.5707963267948966 * (x + 1.0)); };
  p.T = 1.0;
  p.lattice = LatticeConfig::with_cells(10);
  const std::vector<double> v = exact_atomic_solution(p, 1e-9, 2000);
  const double at_center = v[1000];
  const double phi0_center = p.phi(0.0, 0.0);
  CHECK(std::fabs(at_center - phi0_center) > 0.5);  // limit is e^{-1}/(1+(pi/2)^2), far from 1
}

TEST_CASE("history fold agrees with the precomputed forcing-transfer route") {
  // Replacing the historical rows by phi(0) and adding f_phi via quadrature
  // approximates the same solution up to discretization error.
  const Kernel kernel = Kernel::truncated(0.75, 0.2);
  ProblemData direct = example_a(0.1, 50, kernel);
  const int N = 100, M = 50;
  const Field u_direct = solve_nonlocal_fd(direct, N, M);

  ProblemData caputo = direct;
  const DataFn phi = direct.phi;
  caputo.phi = [phi](double, double x) { return phi(0.0, x); };  // frozen history
  caputo.f = [&direct](double t, double x) { return compute_phi_forcing(direct, t, x); };
  const Field u_caputo = solve_nonlocal_fd(caputo, N, M);

  double worst = 0.0;
  for (int j = 1; j < M; ++j)
    worst = std::max(worst, std::fabs(u_direct.at(N, j) - u_caputo.at(N, j)));
  CHECK(worst < 5e-3);
}
