#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nlmc/errors.hpp"
#include "nlmc/kernel.hpp"
#include "nlmc/quadrature.hpp"

using namespace nlmc;

TEST_CASE("fractional density values") {
  const Kernel k = Kernel::fractional(0.5);
  // c_{1/2} = 0.5 / Gamma(0.5) = 0.5 / sqrt(pi)
  CHECK(k.evaluate(0.0, 1.0) == doctest::Approx(0.28209479177387814).epsilon(1e-13));
  CHECK(k.evaluate(3.7, 1.0) == k.evaluate(-2.0, 1.0));  // no time dependence
}

TEST_CASE("truncated density values and support") {
  const Kernel k = Kernel::truncated(0.75, 0.2);
  CHECK(k.evaluate(0.0, 0.3) == 0.0);  // outside (0, delta)
  CHECK(k.evaluate(0.0, 0.1) == doctest::Approx(21.022410381342862).epsilon(1e-13));
  CHECK(k.evaluate(1.0, 0.1) == k.evaluate(0.0, 0.1));
}

TEST_CASE("density domain errors") {
  const Kernel k = Kernel::truncated(0.75, 0.2);
  CHECK_THROWS_AS(k.evaluate(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(k.evaluate(0.0, -1.0), std::domain_error);
  const Kernel a = Kernel::atomic(1.0, 0.2);
  CHECK_THROWS_AS(a.evaluate(0.0, 0.1), unsupported_operation);
  CHECK_THROWS_AS(Kernel::fractional(0.0), std::domain_error);
  CHECK_THROWS_AS(Kernel::fractional(1.0), std::domain_error);
  CHECK_THROWS_AS(Kernel::truncated(0.5, 0.0), std::domain_error);
}

TEST_CASE("tail mass closed forms") {
  const Kernel trunc = Kernel::truncated(0.75, 0.2);
  CHECK(trunc.tail_mass(0.0, 0.2) == 0.0);
  CHECK(trunc.tail_mass(0.0, 0.5) == 0.0);
  CHECK(trunc.tail_mass(0.0, 0.1) == doctest::Approx(1.1363213841790483).epsilon(1e-13));

  const Kernel atom = Kernel::atomic(1.0, 0.2);
  CHECK(atom.tail_mass(0.0, 0.1) == 1.0);
  CHECK(atom.tail_mass(0.0, 0.2) == 1.0);
  CHECK(atom.tail_mass(0.0, 0.21) == 0.0);

  CHECK_THROWS_AS(trunc.tail_mass(0.0, 0.0), std::domain_error);
}

TEST_CASE("tail mass against quadrature of the density") {
  QuadOptions opt;
  opt.rel_tol = 1e-12;
  const Kernel trunc = Kernel::truncated(0.6, 0.35);
  const double quad =
      integrate([&](double r) { return trunc.evaluate(0.0, r); }, 0.12, 0.35, opt);
  CHECK(trunc.tail_mass(0.0, 0.12) == doctest::Approx(quad).epsilon(1e-10));

  const Kernel frac = Kernel::fractional(0.42);
  const double quad2 =
      integrate_upper([&](double r) { return frac.evaluate(0.0, r); }, 0.7, opt);
  CHECK(frac.tail_mass(0.0, 0.7) == doctest::Approx(quad2).epsilon(1e-9));

  // Independently computed values for the tempered family.
  const Kernel temp = Kernel::tempered(0.6, 2.0);
  CHECK(temp.tail_mass(0.0, 0.5) == doctest::Approx(0.07029144603574132).epsilon(1e-9));
  CHECK(temp.restricted_moment(0.0, 0.3) == doctest::Approx(0.3571106166425726).epsilon(1e-9));
}

TEST_CASE("tail mass is nonincreasing in the cut") {
  const Kernel kernels[] = {Kernel::fractional(0.3), Kernel::truncated(0.8, 0.5),
                            Kernel::tempered(0.5, 1.5), Kernel::atomic(2.0, 0.4)};
  for (const Kernel& k : kernels) {
    double prev = k.tail_mass(0.0, 1e-3);
    for (double a = 0.01; a < 2.0; a += 0.037) {
      const double cur = k.tail_mass(0.0, a);
      CHECK(cur <= prev + 1e-15);
      CHECK(cur >= 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("truncated first moment is one for every alpha, delta") {
  for (double alpha = 0.05; alpha < 1.0; alpha += 0.09) {
    for (double delta : {0.05, 0.2, 1.0, 3.7}) {
      const Kernel k = Kernel::truncated(alpha, delta);
      CHECK(k.restricted_moment(0.0, delta) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("variable order agrees with the frozen-order closed forms") {
  const Kernel vo = Kernel::variable_order([](double) { return 0.6; });
  const Kernel frac = Kernel::fractional(0.6);
  CHECK(vo.evaluate(0.3, 0.7) == doctest::Approx(frac.evaluate(0.0, 0.7)).epsilon(1e-14));
  CHECK(vo.tail_mass(0.3, 0.7) == doctest::Approx(frac.tail_mass(0.0, 0.7)).epsilon(1e-9));
  CHECK(vo.restricted_moment(0.3, 0.1) ==
        doctest::Approx(frac.restricted_moment(0.0, 0.1)).epsilon(1e-12));

  const Kernel vo2 = Kernel::variable_order([](double t) { return 0.4 + 0.2 * t; });
  CHECK(vo2.alpha_at(0.5) == doctest::Approx(0.5));
  CHECK(vo2.evaluate(0.0, 0.5) != vo2.evaluate(1.0, 0.5));
}

TEST_CASE("h0 report") {
  const H0Report trunc = Kernel::truncated(0.75, 0.2).h0_report();
  CHECK(trunc.moment_integral == 1.0);
  CHECK(trunc.tail_integral == 0.0);
  CHECK(trunc.lower_bound_ok);

  const H0Report frac = Kernel::fractional(0.5).h0_report();
  CHECK(frac.moment_integral + frac.tail_integral ==
        doctest::Approx(1.1283791670955126).epsilon(1e-12));
  CHECK(frac.lower_bound_ok);

  const H0Report atom = Kernel::atomic(1.5, 0.2).h0_report();
  CHECK_FALSE(atom.lower_bound_ok);
  CHECK(atom.moment_integral == doctest::Approx(1.5 * 0.2));

  const H0Report vo = Kernel::variable_order([](double) { return 0.5; }).h0_report();
  CHECK(vo.moment_integral + vo.tail_integral ==
        doctest::Approx(1.1283791670955126).epsilon(1e-6));
}

TEST_CASE("density is nonnegative everywhere sampled") {
  const Kernel kernels[] = {Kernel::fractional(0.15), Kernel::truncated(0.9, 0.3),
                            Kernel::tempered(0.7, 3.0)};
  for (const Kernel& k : kernels)
    for (double r = 1e-6; r < 4.0; r *= 1.9) CHECK(k.evaluate(0.2, r) >= 0.0);
}
