#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "nlmc/config.hpp"
#include "nlmc/errors.hpp"
#include "nlmc/fdm.hpp"
#include "nlmc/feynman_kac.hpp"
#include "nlmc/stats.hpp"

using namespace nlmc;

namespace {

ProblemData truncated_problem(double T, int M) {
  ProblemData p;
  p.kernel = Kernel::truncated(0.75, 0.2);
  p.T = T;
  p.lattice = LatticeConfig::with_cells(M);
  return p;
}

}  // namespace

TEST_CASE("clock scaling closed form") {
  CHECK(clock_scaling(0.75, 0.2, 0.02) ==
        doctest::Approx(2.9350464434618922e-05).epsilon(1e-12));
  CHECK(clock_scaling(0.5, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  // k shrinks with h
  double prev = clock_scaling(0.75, 0.2, 0.08);
  for (double h : {0.04, 0.02, 0.01}) {
    const double k = clock_scaling(0.75, 0.2, h);
    CHECK(k < prev);
    prev = k;
  }
  CHECK(mc_step_duration(0.02) == doctest::Approx(2e-4).epsilon(1e-15));
}

TEST_CASE("time step choice per kernel family") {
  const TimeStepChoice tc = choose_time_step(Kernel::truncated(0.75, 0.2), 0.02);
  CHECK(tc.m_cells == 6814);
  CHECK(tc.k == doctest::Approx(0.2 / 6814.0).epsilon(1e-14));
  CHECK(0.2 / tc.k == doctest::Approx(static_cast<double>(tc.m_cells)).epsilon(1e-12));

  // Density families: total chain rate times the step duration is one.
  const double h = 0.04;
  for (const Kernel& k : {Kernel::fractional(0.5), Kernel::tempered(0.5, 2.0)}) {
    const TimeStepChoice c = choose_time_step(k, h);
    const double nu = k.restricted_moment(0.0, c.k) / c.k + k.tail_mass(0.0, c.k);
    CHECK(nu * mc_step_duration(h) == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(choose_time_step(Kernel::atomic(1.0, 0.2), 0.02), unsupported_operation);
}

TEST_CASE("zero data estimates are exactly zero") {
  ProblemData p = truncated_problem(0.2, 20);
  const SolutionEstimator est(p, 0.1);
  const McEstimate e = est.estimate_solution(10, 500, 42);
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
  CHECK(e.n_trials == 500);
}

TEST_CASE("boundary points return exact zero without sampling") {
  ProblemData p = truncated_problem(0.2, 20);
  p.phi = example_a_phi();
  const SolutionEstimator est(p, 0.1);
  for (int j : {0, 20}) {
    const McEstimate e = est.estimate_solution(j, 100, 1);
    CHECK(e.mean == 0.0);
    CHECK(e.std_error == 0.0);
  }
  CHECK_THROWS_AS(est.estimate_solution(21, 100, 1), std::domain_error);
}

TEST_CASE("domain validation of the evaluation time") {
  ProblemData p = truncated_problem(0.2, 20);
  CHECK_THROWS_AS(SolutionEstimator(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(SolutionEstimator(p, -0.1), std::domain_error);
  CHECK_THROWS_AS(SolutionEstimator(p, 0.3), std::domain_error);
}

TEST_CASE("snapping reports the grid time actually used") {
  ProblemData p = truncated_problem(0.2, 50);
  const SolutionEstimator est(p, 0.1);
  const double k = est.time_step();
  CHECK(est.snapped_t() <= 0.1 + 1e-12);
  CHECK(0.1 - est.snapped_t() < k * (1.0 + 1e-9));
  const double cells = est.snapped_t() / k;
  CHECK(std::fabs(cells - std::lround(cells)) < 1e-6);
}

TEST_CASE("bit reproducibility across runs and worker counts") {
  ProblemData p = truncated_problem(0.2, 20);
  p.phi = example_a_phi();
  const SolutionEstimator est(p, 0.15);
  const McEstimate a = est.estimate_solution(10, 9000, 777);
  const McEstimate b = est.estimate_solution(10, 9000, 777);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);

  setenv("NLMC_THREADS", "1", 1);
  const McEstimate c = est.estimate_solution(10, 9000, 777);
  setenv("NLMC_THREADS", "4", 1);
  const McEstimate d = est.estimate_solution(10, 9000, 777);
  unsetenv("NLMC_THREADS");
  CHECK(c.mean == d.mean);
  CHECK(c.mean == a.mean);
  CHECK(c.std_error == d.std_error);

  const McEstimate e = est.estimate_solution(10, 9000, 778);
  CHECK(e.mean != a.mean);  // different seed, different paths
}

TEST_CASE("estimates are linear in the data for a fixed seed") {
  ProblemData base = truncated_problem(0.2, 20);
  const DataFn phi1 = example_a_phi();
  const DataFn phi2 = [](double t, double x) { return std::cos(3.0 * t) * (1.0 - x * x); };
  const DataFn f1 = example_b_forcing();

  ProblemData pa = base;
  pa.phi = phi1;
  pa.f = f1;
  ProblemData pb = base;
  pb.phi = phi2;
  ProblemData pc = base;
  pc.phi = [phi1, phi2](double t, double x) { return 2.0 * phi1(t, x) - 3.0 * phi2(t, x); };
  pc.f = [f1](double t, double x) { return 2.0 * f1(t, x); };

  const McEstimate ea = SolutionEstimator(pa, 0.15).estimate_solution(7, 4000, 5);
  const McEstimate eb = SolutionEstimator(pb, 0.15).estimate_solution(7, 4000, 5);
  const McEstimate ec = SolutionEstimator(pc, 0.15).estimate_solution(7, 4000, 5);
  CHECK(ec.mean == doctest::Approx(2.0 * ea.mean - 3.0 * eb.mean).epsilon(1e-12));
}

TEST_CASE("nonnegative data gives a nonnegative estimate") {
  ProblemData p = truncated_problem(0.2, 20);
  p.phi = [](double, double x) { return 1.0 - x * x; };
  p.f = [](double, double) { return 0.5; };
  const McEstimate e = SolutionEstimator(p, 0.2).estimate_solution(5, 3000, 12);
  CHECK(e.mean >= 0.0);
}

TEST_CASE("statistical maximum principle for pure initial data") {
  ProblemData p = truncated_problem(0.2, 20);
  p.phi = example_a_phi();
  double sup_phi = 0.0;
  for (double x = -1.0; x <= 1.0; x += 0.001)
    sup_phi = std::max(sup_phi, std::fabs(p.phi(0.0, x)));
  const SolutionEstimator est(p, 0.2);
  for (int j : {3, 10, 16}) {
    const McEstimate e = est.estimate_solution(j, 4000, 31);
    CHECK(std::fabs(e.mean) <= sup_phi + 3.0 * e.std_error);
  }
}

TEST_CASE("truncated-kernel estimate matches the reference scheme, datum only") {
  ProblemData p = truncated_problem(0.1, 100);
  p.phi = example_a_phi();
  const Field ref = solve_nonlocal_fd(p, 100, 100);  // k = 1e-3 reference
  const SolutionEstimator est(p, 0.1);
  for (int j : {25, 50, 75}) {
    const McEstimate e = est.estimate_solution(j, 20000, 2025);
    CHECK(std::fabs(e.mean - ref.at(100, j)) < 0.02 + 4.0 * e.std_error);
  }
}

TEST_CASE("truncated-kernel estimate matches the reference scheme, forcing only") {
  ProblemData p = truncated_problem(0.1, 100);
  p.f = example_b_forcing();
  const Field ref = solve_nonlocal_fd(p, 100, 100);
  const SolutionEstimator est(p, 0.1);
  for (int j : {25, 50, 75}) {
    const McEstimate e = est.estimate_solution(j, 20000, 77);
    CHECK(std::fabs(e.mean - ref.at(100, j)) < 0.01 + 4.0 * e.std_error);
  }
}

TEST_CASE("atomic estimator against the exact slices") {
  ProblemData p;
  p.kernel = Kernel::atomic(1.0, 0.2);
  p.phi = example_a_phi();
  p.T = 0.45;
  p.lattice = LatticeConfig::with_cells(50);
  const std::vector<double> exact = exact_atomic_solution(p, 0.25, 4000);
  const SolutionEstimator est(p, 0.25);
  CHECK(est.snapped_t() == 0.25);  // continuous clocks: no grid snapping
  for (int j : {13, 25, 38}) {
    const McEstimate e = est.estimate_solution(j, 20000, 4);
    CHECK(std::fabs(e.mean - exact[j * 80]) < 0.02 + 4.0 * e.std_error);
  }
}

TEST_CASE("fractional chain mean crossing clock matches t^alpha / Gamma(1+alpha)") {
  const Kernel kernel = Kernel::fractional(0.5);
  const double h = 0.04;
  const TimeStepChoice c = choose_time_step(kernel, h);
  const long n0 = static_cast<long>(std::floor(0.4 / c.k + 1e-9));
  const TimeChain chain(kernel, c.k, n0);
  const double ds = mc_step_duration(h);
  RunningStats stats;
  for (long i = 0; i < 20000; ++i) {
    Rng rng = Rng::for_trial(55, i);
    long pos = n0;
    long steps = 0;
    while (pos > 0) {
      pos -= chain.sample_jump(pos, rng);
      ++steps;
    }
    stats.add(static_cast<double>(steps) * ds);
  }
  // E[tau_0(0.4)] = 0.4^0.5 / Gamma(1.5)
  CHECK(std::fabs(stats.mean - 0.7136496464611084) < 3.0 * stats.std_error() + 0.01);
}

TEST_CASE("mean joint exit clock and its upper bounds") {
  ProblemData p = truncated_problem(0.2, 40);
  const SolutionEstimator est(p, 0.2);
  const McEstimate joint = est.estimate_mean_exit(20, 20000, 8);
  CHECK(joint.mean > 0.0);
  // tau_0 <= t + delta caps the time component; tau_Omega(0) has mean 1/2.
  CHECK(joint.mean <= 0.2 + 0.2 + 3.0 * joint.std_error);
  CHECK(joint.mean <= 0.5 + 3.0 * joint.std_error);
  const McEstimate bdry = est.estimate_mean_exit(0, 100, 8);
  CHECK(bdry.mean == 0.0);
}

TEST_CASE("forcing transfer closed cases") {
  ProblemData p;
  p.kernel = Kernel::truncated(0.75, 0.2);
  p.T = 1.0;
  p.lattice = LatticeConfig::with_cells(10);
  p.phi = [](double, double x) { return 1.0 - x * x; };  // constant in t
  CHECK(compute_phi_forcing(p, 0.05, 0.3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(compute_phi_forcing(p, 0.25, 0.3) == 0.0);  // beyond the horizon

  p.phi = [](double t, double x) { return std::exp(5.0 * t) * (1.0 - x * x); };
  CHECK(compute_phi_forcing(p, 0.2, 0.3) == 0.0);

  ProblemData atom = p;
  atom.kernel = Kernel::atomic(1.0, 0.2);
  const double psi = 1.0 - 0.3 * 0.3;
  CHECK(compute_phi_forcing(atom, 0.1, 0.3) ==
        doctest::Approx((std::exp(-0.5) - 1.0) * psi).epsilon(1e-13));
  CHECK(compute_phi_forcing(atom, 0.2, 0.3) == 0.0);
  CHECK_THROWS_AS(compute_phi_forcing(atom, 0.0, 0.3), std::domain_error);

  ProblemData frac = p;
  frac.kernel = Kernel::fractional(0.5);
  // Independently computed: int_t^inf (e^{5(t-r)} - 1) c_a r^{-3/2} dr at t = 0.1.
  CHECK(compute_phi_forcing(frac, 0.1, 0.3) ==
        doctest::Approx(-1.1445823588771908 * psi).epsilon(1e-7));
}

TEST_CASE("variable-order kernel runs through the estimator") {
  ProblemData p;
  p.kernel = Kernel::variable_order([](double t) { return 0.45 + 0.2 * t; }, 0.0, 0.3);
  p.phi = example_a_phi();
  p.T = 0.3;
  p.lattice = LatticeConfig::with_cells(20);
  const SolutionEstimator est(p, 0.2);
  const McEstimate e = est.estimate_solution(10, 2000, 6);
  CHECK(std::isfinite(e.mean));
  CHECK(e.std_error > 0.0);
  CHECK(std::fabs(e.mean) < 0.25);  // bounded by sup |phi| with margin
}
