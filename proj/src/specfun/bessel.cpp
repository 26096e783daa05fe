#include "trapcert/specfun/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "trapcert/errors.hpp"

namespace trapcert::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 1'000'000;
constexpr int kRescaleExp = 600;
const double kRescaleAt = std::ldexp(1.0, kRescaleExp);

// Taylor coefficients of 1/Gamma(z) = sum_{k>=1} c_k z^k (Abramowitz & Stegun 6.1.34).
constexpr std::array<double, 26> kRecipGamma = {
    1.0000000000000000,  0.5772156649015329,  -0.6558780715202538, -0.0420026350340952,
    0.1665386113822915,  -0.0421977345555443, -0.0096219715278770, 0.0072189432466630,
    -0.0011651675918591, -0.0002152416741149, 0.0001280502823882,  -0.0000201348547807,
    -0.0000012504934821, 0.0000011330272320,  -0.0000002056338417, 0.0000000061160950,
    0.0000000050020075,  -0.0000000011812746, 0.0000000001043427,  0.0000000000077823,
    -0.0000000000036968, 0.0000000000005100,  -0.0000000000000206, -0.0000000000000054,
    0.0000000000000014,  0.0000000000000001};

struct TemmeGamma {
  double recip_plus;   // 1/Gamma(1+mu)
  double recip_minus;  // 1/Gamma(1-mu)
  double g1;           // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double g2;           // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
};

// 1/Gamma(1+z) = sum_k c_k z^(k-1) splits into an even part (g2) and an odd
// part (-z g1), so both combinations come out without cancellation.
TemmeGamma temme_gamma(double mu) {
  const double u = mu * mu;
  double even = 0.0;
  double odd = 0.0;
  for (std::size_t k = kRecipGamma.size(); k-- > 0;) {
    if (k % 2 == 0) {
      even = even * u + kRecipGamma[k];  // c_1, c_3, ...: coefficient of z^(2i)
    } else {
      odd = odd * u + kRecipGamma[k];  // c_2, c_4, ...: coefficient of z^(2i+1)
    }
  }
  return {even + mu * odd, even - mu * odd, -odd, even};
}

struct YPair {
  double y_mu;
  double y_mu1;
};

// Temme's series for Y_mu and Y_{mu+1}, |mu| <= 1/2, 0 < x < 2.
YPair temme_series(double mu, double x) {
  const TemmeGamma g = temme_gamma(mu);
  const double half_x = 0.5 * x;
  const double pimu = kPi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  const double d = -std::log(half_x);
  const double e = mu * d;
  const double sinhc = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  double ff = 2.0 / kPi * fact * (g.g1 * std::cosh(e) + g.g2 * sinhc * d);
  const double ex = std::exp(e);
  double p = ex / (g.recip_plus * kPi);
  double q = 1.0 / (ex * kPi * g.recip_minus);
  const double half_pimu = 0.5 * pimu;
  const double sinc = std::abs(half_pimu) < kEps ? 1.0 : std::sin(half_pimu) / half_pimu;
  const double r = kPi * half_pimu * sinc * sinc;
  const double step = -half_x * half_x;
  double c = 1.0;
  double sum = ff + r * q;
  double sum1 = p;
  for (int i = 1;; ++i) {
    if (i > kMaxIter) throw RangeError("Temme series did not converge");
    const double di = i;
    ff = (di * ff + p + q) / (di * di - mu * mu);
    c *= step / di;
    p /= di - mu;
    q /= di + mu;
    const double del = c * (ff + r * q);
    sum += del;
    sum1 += c * p - di * del;
    if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
  }
  return {-sum, -sum1 * 2.0 / x};
}

struct Cf1Result {
  double ratio;  // J'_nu / J_nu
  int sign;      // sign of J_nu relative to the recurrence seed
};

// J'_nu/J_nu = nu/x - 1/(2(nu+1)/x - 1/(2(nu+2)/x - ...)), modified Lentz.
Cf1Result cf1(double nu, double x) {
  const double xi2 = 2.0 / x;
  int sign = 1;
  double h = std::max(nu / x, kTiny);
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  for (int i = 1;; ++i) {
    if (i > kMaxIter) throw RangeError("continued fraction for J'/J did not converge");
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) sign = -sign;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  return {h, sign};
}

// H'_mu/H_mu = i - 1/(2x) + (i/x) * a_1/(b_1 + a_2/(b_2 + ...)) with
// a_k = (k - 1/2)^2 - mu^2, b_k = 2(x + k i). Converges quickly for x >= 2, mu <= x.
std::complex<double> cf2(double mu, double x) {
  using cplx = std::complex<double>;
  const cplx tiny(kTiny, 0.0);
  cplx f = tiny;
  cplx c = f;
  cplx d = 0.0;
  for (int k = 1;; ++k) {
    if (k > kMaxIter) throw RangeError("continued fraction for H'/H did not converge");
    const double kh = k - 0.5;
    const double a = kh * kh - mu * mu;
    const cplx b(2.0 * x, 2.0 * k);
    d = b + a * d;
    if (std::abs(d) < kTiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < kTiny) c = tiny;
    d = 1.0 / d;
    const cplx del = c * d;
    f *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) <= 2.0 * kEps) break;
  }
  return cplx(-0.5 / x, 1.0) + cplx(0.0, 1.0 / x) * f;
}

ScaledReal scaled_pow(double t, double p) {
  const double log2_value = p * std::log2(t);
  if (std::abs(log2_value) < 1000.0) return ScaledReal(std::pow(t, p));
  const double whole = std::floor(log2_value);
  return ScaledReal::from_parts(std::exp2(log2_value - whole), static_cast<std::int64_t>(whole));
}

void check_domain(double nu, double t) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw DomainError("Bessel order must be finite and >= 0, got " + std::to_string(nu));
  }
  if (!std::isfinite(t) || t <= 0.0) {
    throw DomainError("Bessel argument must be finite and > 0, got " + std::to_string(t));
  }
}

}  // namespace

CylEvalScaled cyl_bessel_scaled(double nu, double x) {
  check_domain(nu, x);

  const int steps =
      x < 2.0 ? static_cast<int>(nu + 0.5) : std::max(0, static_cast<int>(nu - x + 1.5));
  const double mu = nu - steps;
  const double wr = 2.0 / (kPi * x);

  const Cf1Result top = cf1(nu, x);

  // Unnormalised downward recurrence from nu to mu; jl carries a 2^jscale factor.
  double jl = top.sign;
  double jpl = top.ratio * jl;
  const double j_top = jl;
  const double jp_top = jpl;
  std::int64_t jscale = 0;
  double order = nu;
  for (int l = steps; l >= 1; --l) {
    const double jlower = (order / x) * jl + jpl;
    order -= 1.0;
    jpl = (order / x) * jlower - jl;
    jl = jlower;
    if (std::max(std::abs(jl), std::abs(jpl)) > kRescaleAt) {
      jl = std::ldexp(jl, -kRescaleExp);
      jpl = std::ldexp(jpl, -kRescaleExp);
      jscale += kRescaleExp;
    }
  }
  if (jl == 0.0) jl = kEps;
  const double f_mu = jpl / jl;

  double j_mu = 0.0;
  double y_mu = 0.0;
  double y_mu1 = 0.0;
  if (x < 2.0) {
    const YPair ys = temme_series(mu, x);
    y_mu = ys.y_mu;
    y_mu1 = ys.y_mu1;
    const double yp_mu = mu / x * y_mu - y_mu1;
    j_mu = wr / (yp_mu - f_mu * y_mu);
  } else {
    const std::complex<double> pq = cf2(mu, x);
    const double p = pq.real();
    const double q = pq.imag();
    const double gam = (p - f_mu) / q;
    j_mu = std::copysign(std::sqrt(wr / ((p - f_mu) * gam + q)), jl);
    y_mu = j_mu * gam;
    const double yp_mu = q * j_mu + p * y_mu;
    y_mu1 = mu / x * y_mu - yp_mu;
  }

  CylEvalScaled out;
  out.nu = nu;
  out.t = x;
  const ScaledReal norm = ScaledReal::from_parts(j_mu / jl, -jscale);
  out.j = ScaledReal(j_top) * norm;
  out.jp = ScaledReal(jp_top) * norm;

  double ya = y_mu;
  double yb = y_mu1;
  std::int64_t yscale = 0;
  for (int i = 1; i <= steps; ++i) {
    const double next = (mu + i) * (2.0 / x) * yb - ya;
    ya = yb;
    yb = next;
    if (std::abs(yb) > kRescaleAt) {
      ya = std::ldexp(ya, -kRescaleExp);
      yb = std::ldexp(yb, -kRescaleExp);
      yscale += kRescaleExp;
    }
  }
  out.y = ScaledReal::from_parts(ya, yscale);
  const ScaledReal y_next = ScaledReal::from_parts(yb, yscale);
  out.yp = ScaledReal(nu / x) * out.y - y_next;
  return out;
}

CylEval cyl_bessel(double nu, double t) {
  const CylEvalScaled s = cyl_bessel_scaled(nu, t);
  return {nu, t, s.j.to_double(), s.y.to_double(), s.jp.to_double(), s.yp.to_double()};
}

double wronskian_residual(double nu, double t) {
  const CylEvalScaled s = cyl_bessel_scaled(nu, t);
  const ScaledReal expected(2.0 / (kPi * t));
  return ((s.wronskian() - expected) / expected).abs().to_double_saturating();
}

double spherical_order(int m, int n) {
  if (m < 0) throw DomainError("spherical mode m must be >= 0");
  if (n < 2) throw DomainError("dimension n must be >= 2");
  return m + 0.5 * n - 1.0;
}

SphEvalScaled spherical_hankel_scaled(int m, int n, double t) {
  const double nu = spherical_order(m, n);
  SphEvalScaled out;
  out.m = m;
  out.n = n;
  out.t = t;
  out.cyl = cyl_bessel_scaled(nu, t);

  // h_m = t^p H_nu, h_m' = t^(p-1) (t H_nu' + p H_nu), p = 1 - n/2.
  const double p = 1.0 - 0.5 * n;
  const ScaledReal tp = scaled_pow(t, p);
  const ScaledReal tpm1 = tp / ScaledReal(t);
  const ScaledReal tt(t);
  const ScaledReal pp(p);
  out.j = tp * out.cyl.j;
  out.y = tp * out.cyl.y;
  out.jp = tpm1 * (tt * out.cyl.jp + pp * out.cyl.j);
  out.yp = tpm1 * (tt * out.cyl.yp + pp * out.cyl.y);
  return out;
}

SphEval spherical_hankel(int m, int n, double t) {
  const SphEvalScaled s = spherical_hankel_scaled(m, n, t);
  SphEval out;
  out.m = m;
  out.n = n;
  out.t = t;
  out.h = {s.j.to_double(), s.y.to_double()};
  out.hp = {s.jp.to_double(), s.yp.to_double()};
  out.modM = s.cyl.modulus_sq().sqrt().to_double();
  out.modN = s.cyl.deriv_modulus_sq().sqrt().to_double();
  return out;
}

}  // namespace trapcert::specfun
