#include "trapcert/specfun/halfint.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "trapcert/errors.hpp"
#include "trapcert/specfun/bessel.hpp"

namespace trapcert::specfun {

namespace {

using cplx = std::complex<double>;
// The finite sum cancels heavily near t ~ nu (about 20 digits lost at nu = 100),
// so it is carried with 60 digits and an unbounded exponent.
using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>>;

struct WidePair {
  Wide vr, vi;  // value
  Wide dr, di;  // derivative
};

// f(t) = t^shift H_{l+1/2}(t) = sqrt(2/pi) e^(it) sum_k (-i)^(l+1) i^k a_k t^(shift - 1/2 - k),
// a_k = (l+k)! / (k! (l-k)! 2^k).
WidePair series(int l, double shift, double t) {
  if (l < 0) throw DomainError("half-integer order index must be >= 0");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("argument must be finite and > 0");

  const Wide tw(t);
  Wide sr = 0, si = 0, pr = 0, pi = 0;  // sum of terms, and of terms * e_k / t
  Wide a = 1;
  Wide tp = boost::multiprecision::pow(tw, Wide(shift) - Wide(0.5));
  for (int k = 0; k <= l; ++k) {
    const Wide term = a * tp;
    const Wide weighted = term * (Wide(shift) - Wide(0.5) - k) / tw;
    switch ((3 * (l + 1) + k) % 4) {  // (-i)^(l+1) i^k = i^(3(l+1) + k)
      case 0: sr += term; pr += weighted; break;
      case 1: si += term; pi += weighted; break;
      case 2: sr -= term; pr -= weighted; break;
      default: si -= term; pi -= weighted; break;
    }
    a *= Wide(l + k + 1) * Wide(l - k) / Wide(2 * (k + 1));
    tp /= tw;
  }
  // derivative of the sum is sum * i + weighted sum
  const Wide dr = pr - si, di = pi + sr;
  const Wide norm = boost::multiprecision::sqrt(Wide(2) / boost::math::constants::pi<Wide>());
  const Wide c = boost::multiprecision::cos(tw) * norm, s = boost::multiprecision::sin(tw) * norm;
  return {c * sr - s * si, c * si + s * sr, c * dr - s * di, c * di + s * dr};
}

HankelPair to_double(const WidePair& w) {
  return {{static_cast<double>(w.vr), static_cast<double>(w.vi)}, {static_cast<double>(w.dr), static_cast<double>(w.di)}};
}

Wide widen(const ScaledReal& x) { return boost::multiprecision::ldexp(Wide(x.mantissa()), static_cast<int>(x.exponent())); }

Wide rel(const ScaledReal& re, const ScaledReal& im, const Wide& er, const Wide& ei) {
  const Wide scale = boost::multiprecision::sqrt(er * er + ei * ei);
  const Wide dr = widen(re) - er, di = widen(im) - ei;
  const Wide diff = boost::multiprecision::sqrt(dr * dr + di * di);
  return scale == 0 ? diff : diff / scale;
}

}  // namespace

bool is_half_integer(double nu) {
  const double twice = 2.0 * nu;
  return nu >= 0.0 && twice == std::floor(twice) && std::fmod(twice, 2.0) == 1.0;
}

HankelPair halfint_hankel(int l, double x) { return to_double(series(l, 0.0, x)); }

HankelPair halfint_spherical_hankel(int m, int n, double t) {
  if (n < 3 || n % 2 == 0) throw DomainError("closed forms need an odd dimension n >= 3");
  if (m < 0) throw DomainError("spherical mode m must be >= 0");
  const int l = m + (n - 3) / 2;
  return to_double(series(l, 1.0 - 0.5 * n, t));
}

double halfint_relative_error(double nu, double t) {
  if (!is_half_integer(nu)) throw DomainError("order is not a half-integer");
  const int l = static_cast<int>(nu - 0.5);
  const WidePair closed = series(l, 0.0, t);
  const CylEvalScaled e = cyl_bessel_scaled(nu, t);
  const Wide v = rel(e.j, e.y, closed.vr, closed.vi);
  const Wide d = rel(e.jp, e.yp, closed.dr, closed.di);
  return static_cast<double>(v > d ? v : d);
}

}  // namespace trapcert::specfun
