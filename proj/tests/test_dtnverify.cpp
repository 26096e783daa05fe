#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles/reference_values.hpp"
#include "trapcert/dtnverify.hpp"

using namespace trapcert;

namespace {

double relerr(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("DtN eigenvalues") {
  for (double k : {0.3, 1.0, 7.0})
    for (double R : {0.5, 2.0, 30.0}) {
      const std::complex<double> want(-1.0 / R, k);
      CHECK(std::abs(dtn_eigenvalue(0, 3, k, R) - want) <= 1e-12 * std::abs(want));
    }
  const std::complex<double> l = dtn_eigenvalue(0, 2, 1.0, 1.0);
  CHECK(l.imag() > 0.0);
  CHECK(l.real() <= 0.0);
  CHECK(relerr(l.real(), oracle::lambda_m0_n2_re) <= 1e-12);
  CHECK(relerr(l.imag(), oracle::lambda_m0_n2_im) <= 1e-12);

  for (int n : {2, 3, 4}) {
    double prev = dtn_eigenvalue(0, n, 1.0, 2.0).real();
    for (int m = 1; m <= 50; ++m) {
      const double re = dtn_eigenvalue(m, n, 1.0, 2.0).real();
      CHECK(re < prev);
      prev = re;
    }
  }
}

TEST_CASE("A_nu") {
  CHECK(relerr(a_nu(1.0, 1.0), oracle::a_1_at_1) <= 1e-10);
  CHECK(a_nu(1.0, 1.0) < 0.0);
  CHECK(relerr(a_nu(0.0, 0.1), oracle::a_0_at_01) <= 1e-10);
  CHECK(a_nu(0.0, 0.1) > 0.0);
  for (double t : log_grid(0.05, 200.0, 300)) CHECK(std::abs(a_nu_scaled(0.5, t).relative()) <= 1e-10);
  for (double nu : {0.5, 1.0, 3.5, 20.0, 99.0})
    for (double t : log_grid(0.05, 200.0, 60)) CHECK(a_nu_scaled(nu, t).nonpositive(1e-9));
}

TEST_CASE("B_m spot values") {
  CHECK(relerr(b_m(5, 2, 10.0, 1.0), oracle::b_5_n2_rho10_a1) <= 1e-10);
  CHECK(b_m(5, 2, 10.0, 1.0) <= 0.0);
  CHECK(relerr(b_m(3, 4, 2.0, 2.0), oracle::b_3_n4_rho2_a2) <= 1e-10);
  CHECK(relerr(b_m(0, 4, 0.5, 0.0), oracle::b_0_n4_rho05_a0) <= 1e-10);
  CHECK(std::abs(b_m(0, 3, 1.0, 2.0) + 2.0 / std::numbers::pi) <= 1e-10);
  for (double rho : log_grid(0.05, 200.0, 2000)) {
    CHECK(std::abs(b_m_scaled(0, 3, rho, 1.0).relative()) <= 1e-10);
    const ScaledCheck c = b_m_scaled(0, 3, rho, 2.0);
    CHECK(std::abs(c.value.to_double() + 2.0 / (std::numbers::pi * rho * rho)) <= 1e-10 * std::max(1.0, c.scale.to_double()));
  }
}

TEST_CASE("B_m closed form agrees with the engine") {
  for (int n : {3, 5})
    for (int m = 0; m <= 20; ++m)
      for (double rho = 0.5; rho <= 60.0; rho *= 1.5)
        for (double alpha : {1.0, 3.0}) {
          CAPTURE(n);
          CAPTURE(m);
          CAPTURE(rho);
          const ScaledCheck e = b_m_scaled(m, n, rho, alpha);
          const ScaledCheck c = b_m_closed_form(m, n, rho, alpha);
          const double scale = std::max(1.0, e.scale.to_double_saturating());
          CHECK(std::abs(e.value.to_double_saturating() - c.value.to_double_saturating()) <= 1e-10 * scale);
        }
}

TEST_CASE("alpha set and grid") {
  SweepSpec s;
  CHECK(sweep_alphas(s, 2) == std::vector<double>{1, 2});
  CHECK(sweep_alphas(s, 3) == std::vector<double>{1, 2, 3});
  CHECK(sweep_alphas(s, 5) == std::vector<double>{3, 4, 5});
  const auto g = log_grid(0.05, 200.0, 2000);
  CHECK(g.size() == 2000);
  CHECK(g.front() == 0.05);
  CHECK(g.back() == 200.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("reduced sweep") {
  SweepSpec s;
  s.dimensions = {2, 3, 4, 5};
  s.m_max = 12;
  s.rho_points = 150;
  std::int64_t seen = 0;
  const SweepSummary r = verify_sweep(s, [&](const ModeCheckRecord& rec) {
    ++seen;
    CHECK(rec.b_asserted == (rec.alpha >= std::max(1.0, rec.n - 2.0)));
    CHECK(rec.a_asserted == (rec.nu >= 0.5));
  });
  CHECK(r.violations() == 0);
  CHECK(seen == r.records);
  CHECK(r.mode_points == 4 * 13 * 150);
  CHECK(r.records == (2 + 3 + 3 + 3) * 13 * 150);
  CHECK(r.im_max_residual <= 1e-9);
}

TEST_CASE("sweep below the alpha threshold records probes") {
  SweepSpec s;
  s.dimensions = {4};
  s.m_max = 3;
  s.rho_points = 100;
  s.alphas = {0.0};
  const SweepSummary r = verify_sweep(s);
  CHECK(r.b_probe_positive > 0);
  CHECK(r.b_violations == 0);
}
