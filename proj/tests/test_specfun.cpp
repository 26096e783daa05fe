#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles/reference_values.hpp"
#include "trapcert/errors.hpp"
#include "trapcert/specfun/bessel.hpp"
#include "trapcert/specfun/halfint.hpp"

using namespace trapcert;
using namespace trapcert::specfun;

namespace {

double rel(const ScaledReal& got, const oracle::Split& want) {
  const ScaledReal w = ScaledReal::from_parts(want.mantissa, want.exponent);
  return ((got - w) / w).abs().to_double();
}

double rel(std::complex<double> got, std::complex<double> want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("ScaledReal arithmetic") {
  const ScaledReal a(3.0), b(-0.75);
  CHECK((a + b).to_double() == 2.25);
  CHECK((a * b).to_double() == -2.25);
  CHECK((a / b).to_double() == -4.0);
  CHECK((a - a).is_zero());
  CHECK(a.sqrt().to_double() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

  const ScaledReal big = ScaledReal::from_parts(0.5, 5000);
  const ScaledReal tiny = ScaledReal::from_parts(0.5, -5000);
  CHECK_FALSE(big.representable());
  CHECK((big * tiny).to_double() == 0.25);
  CHECK(big.log10_abs() == doctest::Approx(4999 * std::log10(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(big.to_double(), RangeError);
  CHECK(std::isinf(big.to_double_saturating()));
  CHECK(tiny.to_double_saturating() == 0.0);
  CHECK(tiny < big);
  CHECK(-big < tiny);
  CHECK((big + tiny) == big);
}

TEST_CASE("Bessel values against the mpmath oracle") {
  for (const auto& p : oracle::kBessel) {
    CAPTURE(p.nu);
    CAPTURE(p.t);
    const CylEvalScaled e = cyl_bessel_scaled(p.nu, p.t);
    CHECK(rel(e.j, p.j) <= 1e-10);
    CHECK(rel(e.y, p.y) <= 1e-10);
    CHECK(rel(e.jp, p.jp) <= 1e-10);
    CHECK(rel(e.yp, p.yp) <= 1e-10);
  }
}

TEST_CASE("Bessel closed-form spot values") {
  CHECK(cyl_bessel(0.0, 1e-3).j == doctest::Approx(1.0 - 2.5e-7 + 1.5625e-14).epsilon(1e-15));
  const double half_pi = std::numbers::pi / 2;
  CHECK(cyl_bessel(0.5, half_pi).j == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-13));
  for (double t : {0.1, 1.0, 3.7, 25.0}) {
    const CylEval e = cyl_bessel(0.5, t);
    const double s = std::sqrt(2.0 / (std::numbers::pi * t));
    CHECK(e.j == doctest::Approx(s * std::sin(t)).epsilon(1e-12));
    CHECK(e.y == doctest::Approx(-s * std::cos(t)).epsilon(1e-12));
  }
}

TEST_CASE("Bessel domain and range errors") {
  CHECK_THROWS_AS(cyl_bessel(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(cyl_bessel(1.0, -2.0), DomainError);
  CHECK_THROWS_AS(cyl_bessel(-0.5, 1.0), DomainError);
  CHECK_THROWS_AS(cyl_bessel(100.0, 0.01), RangeError);
  CHECK_NOTHROW(cyl_bessel_scaled(100.0, 0.01));
}

TEST_CASE("Wronskian residual on a coarse grid") {
  CHECK(wronskian_residual(0.0, 1.0) <= 1e-10);
  CHECK(wronskian_residual(7.5, 40.0) <= 1e-10);
  CHECK(wronskian_residual(100.0, 0.01) <= 1e-10);
  double worst = 0.0;
  for (double nu = 0.0; nu <= 200.0; nu += 3.25)
    for (double t = 1e-3; t <= 1e3; t *= 1.7) worst = std::max(worst, wronskian_residual(nu, t));
  CHECK(worst <= 1e-10);
}

TEST_CASE("modulus M_nu decreases in t") {
  for (double nu : {0.0, 0.5, 1.0, 4.5, 30.0, 100.0}) {
    CAPTURE(nu);
    ScaledReal prev = cyl_bessel_scaled(nu, 0.01).modulus_sq();
    for (double t = 0.011; t < 300.0; t *= 1.05) {
      const ScaledReal cur = cyl_bessel_scaled(nu, t).modulus_sq();
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("spherical Hankel spot values") {
  const SphEval h = spherical_hankel(0, 3, 1.0);
  const std::complex<double> want = -std::complex<double>(0, 1) * std::sqrt(2.0 / std::numbers::pi) * std::exp(std::complex<double>(0, 1));
  CHECK(rel(h.h, want) <= 1e-12);

  const SphEvalScaled s = spherical_hankel_scaled(0, 2, 1.0);
  CHECK(s.im_hp_conj_h().to_double() == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-13));
  CHECK(spherical_order(3, 4) == 4.0);
  CHECK(spherical_order(0, 3) == 0.5);
}

TEST_CASE("Im(h' conj h) equals 2/(pi t^(n-1))") {
  for (int n : {2, 3, 4, 5})
    for (int m : {0, 1, 7, 40, 100})
      for (double t : {0.05, 0.9, 13.0, 200.0}) {
        const SphEvalScaled s = spherical_hankel_scaled(m, n, t);
        const double want = 2.0 / (std::numbers::pi * std::pow(t, n - 1));
        CHECK(((s.im_hp_conj_h() - ScaledReal(want)) / ScaledReal(want)).abs().to_double() <= 1e-10);
      }
}

TEST_CASE("half-integer closed forms agree with the recurrence engine") {
  for (int n : {3, 5})
    for (int m = 0; m <= 20; ++m)
      for (double t = 0.5; t <= 60.0; t *= 1.4) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(t);
        const HankelPair c = halfint_spherical_hankel(m, n, t);
        const SphEval e = spherical_hankel(m, n, t);
        CHECK(rel(e.h, c.value) <= 1e-10);
        CHECK(rel(e.hp, c.deriv) <= 1e-10);
      }
  CHECK(is_half_integer(2.5));
  CHECK_FALSE(is_half_integer(2.0));
  CHECK(halfint_relative_error(7.5, 40.0) <= 1e-10);
}
