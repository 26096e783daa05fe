#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "trapcert/specfun/scaled.hpp"

// Mode-by-mode checks of the Dirichlet-to-Neumann map on the sphere of radius
// R in R^n. The outgoing solution with boundary data Y_m (a spherical harmonic
// of degree m) is h_m(kr)/h_m(kR) Y_m, so the map acts on that mode by
// lambda_m = k h_m'(kR)/h_m(kR).
//
// B_m uses the Laplace-Beltrami eigenvalue m(m+n-2), which is what makes
// rho^2 - m(m+n-2) - p^2 = rho^2 - nu^2 with p = n/2 - 1.

namespace trapcert {

using specfun::ScaledReal;

std::complex<double> dtn_eigenvalue(int m, int n, double k, double R);

/// A value together with the largest magnitude among its additive terms.
struct ScaledCheck {
  ScaledReal value;
  ScaledReal scale;
  /// value / max(1, scale); the normalised size used for tolerances.
  double relative() const;
  /// value <= tol * max(1, scale)
  bool nonpositive(double tol) const;
};

/// A_nu(t) = M^2 (t^2 - nu^2) + t^2 N^2 - 4t/pi.
ScaledCheck a_nu_scaled(double nu, double t);
double a_nu(double nu, double t);

/// B_m(rho) = (rho^2 - m(m+n-2))|h|^2 + rho^2|h'|^2 + alpha rho Re(h' conj h) - (4/pi) rho^(3-n).
ScaledCheck b_m_scaled(int m, int n, double rho, double alpha);
double b_m(int m, int n, double rho, double alpha);

/// B_m from the finite half-integer closed forms, odd n >= 3. Binary64 only.
ScaledCheck b_m_closed_form(int m, int n, double rho, double alpha);

struct ModeCheckRecord {
  int n = 0;
  int m = 0;
  double nu = 0.0;
  double rho = 0.0;
  double alpha = 0.0;
  double a_nu = 0.0;     // saturating binary64
  double a_rel = 0.0;    // A / max(1, scale)
  double b_m = 0.0;
  double b_rel = 0.0;
  double re_sign = 0.0;  // Re(h' conj h)
  double re_rel = 0.0;
  double im_residual = 0.0;
  bool a_asserted = false;  // nu >= 1/2
  bool b_asserted = false;  // alpha >= max(1, n-2)
  bool a_ok = true;
  bool b_ok = true;
  bool re_ok = true;
  bool im_ok = true;
  bool failed = false;      // evaluation raised
  bool violation() const { return failed || (a_asserted && !a_ok) || (b_asserted && !b_ok) || !re_ok || !im_ok; }
};

struct SweepSpec {
  std::vector<int> dimensions{2, 3, 4, 5};
  int m_max = 100;
  double rho_min = 0.05;
  double rho_max = 200.0;
  int rho_points = 2000;
  /// Empty: {max(1, n-2), n-1, n} per dimension, duplicates removed.
  std::vector<double> alphas;
  double tol = 1e-9;
  double im_tol = 1e-9;
};

struct SweepSummary {
  std::int64_t records = 0;
  std::int64_t mode_points = 0;           // distinct (n, m, rho)
  std::int64_t b_violations = 0;          // asserted alphas only
  std::int64_t b_probe_positive = 0;      // alphas below max(1, n-2)
  std::int64_t a_violations = 0;          // nu >= 1/2
  std::int64_t a_probe_positive = 0;      // nu < 1/2
  std::int64_t re_violations = 0;
  std::int64_t im_violations = 0;
  std::int64_t evaluation_failures = 0;
  double b_max_rel = -1e300;   // max of B/max(1,scale) over asserted records
  double a_max_rel = -1e300;
  double re_max_rel = -1e300;
  double im_max_residual = 0.0;
  std::int64_t violations() const {
    return b_violations + a_violations + re_violations + im_violations + evaluation_failures;
  }
};

std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> sweep_alphas(const SweepSpec& spec, int n);

/// Calls sink (if set) with every record in (n, m, rho, alpha) order.
SweepSummary verify_sweep(const SweepSpec& spec, const std::function<void(const ModeCheckRecord&)>& sink = {});

}  // namespace trapcert
