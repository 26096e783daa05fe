#pragma once

#include <complex>

// Finite closed forms for Hankel functions of half-integer order,
//
//   H_{l+1/2}(x) = sqrt(2/(pi x)) (-i)^(l+1) e^(ix) sum_{k=0}^{l} i^k (l+k)! / (k! (l-k)! (2x)^k),
//
// differentiated term by term. They share no code with the recurrence engine
// and serve as its second route for odd dimensions.

namespace trapcert::specfun {

struct HankelPair {
  std::complex<double> value;
  std::complex<double> deriv;
};

bool is_half_integer(double nu);

/// H^(1)_{l+1/2}(x) and its derivative, summed in 60-digit arithmetic and
/// rounded; components outside the binary64 range come back as inf or 0.
HankelPair halfint_hankel(int l, double x);

/// h_m(n, t) and h_m'(n, t) for odd n >= 3.
HankelPair halfint_spherical_hankel(int m, int n, double t);

/// max(|dH|/|H|, |dH'|/|H'|) between the engine and the closed form for half-integer nu.
double halfint_relative_error(double nu, double t);

}  // namespace trapcert::specfun
