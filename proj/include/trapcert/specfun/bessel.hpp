#pragma once

#include <complex>

#include "trapcert/specfun/scaled.hpp"

// Cylindrical and spherical Bessel/Hankel functions of real order nu >= 0 and
// real argument t > 0.
//
// J_nu and J'_nu come from Miller-type downward recurrence started from the
// continued fraction for J'_nu/J_nu; Y_nu is seeded at an order mu = nu - N
// (Temme's series for t < 2, Steed's continued fraction otherwise) and carried
// upward. The Wronskian fixes the normalisation at mu, and is then used as an
// independent check at nu.
//
// Accuracy target: 1e-10 relative for nu <= 200 and t in [1e-3, 1e3].

namespace trapcert::specfun {

struct CylEval {
  double nu = 0.0;
  double t = 0.0;
  double j = 0.0;   // J_nu(t)
  double y = 0.0;   // Y_nu(t)
  double jp = 0.0;  // J'_nu(t)
  double yp = 0.0;  // Y'_nu(t)
};

/// Same values with an independent exponent per function, never overflowing.
struct CylEvalScaled {
  double nu = 0.0;
  double t = 0.0;
  ScaledReal j, y, jp, yp;

  ScaledReal wronskian() const { return j * yp - y * jp; }
  ScaledReal modulus_sq() const { return j * j + y * y; }        // M_nu^2
  ScaledReal deriv_modulus_sq() const { return jp * jp + yp * yp; }  // N_nu^2
};

CylEvalScaled cyl_bessel_scaled(double nu, double t);

/// Throws DomainError for t <= 0 or nu < 0, RangeError when any of the four
/// values is not a normal binary64 number.
CylEval cyl_bessel(double nu, double t);

/// |J Y' - Y J' - 2/(pi t)| / (2/(pi t)).
double wronskian_residual(double nu, double t);

/// h_m(n, t) = H^(1)_nu(t) / t^(n/2-1), nu = m + n/2 - 1, and friends.
struct SphEval {
  int m = 0;
  int n = 0;
  double t = 0.0;
  std::complex<double> h;
  std::complex<double> hp;
  double modM = 0.0;  // |H^(1)_nu(t)|
  double modN = 0.0;  // |H^(1)'_nu(t)|
};

/// Spherical quantities kept as separately scaled real and imaginary parts so
/// that both Re(h' conj h) (dominated by y_m) and Im(h' conj h) (a product of
/// j_m and y_m) survive any magnitude gap.
struct SphEvalScaled {
  int m = 0;
  int n = 0;
  double t = 0.0;
  CylEvalScaled cyl;
  ScaledReal j, y, jp, yp;  // j_m, y_m, j_m', y_m'

  double order() const { return cyl.nu; }
  ScaledReal h_mod_sq() const { return j * j + y * y; }
  ScaledReal hp_mod_sq() const { return jp * jp + yp * yp; }
  ScaledReal re_hp_conj_h() const { return jp * j + yp * y; }
  ScaledReal im_hp_conj_h() const { return yp * j - jp * y; }
};

double spherical_order(int m, int n);

SphEvalScaled spherical_hankel_scaled(int m, int n, double t);
SphEval spherical_hankel(int m, int n, double t);

}  // namespace trapcert::specfun
