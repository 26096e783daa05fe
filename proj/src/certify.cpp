#include "trapcert/certify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "trapcert/errors.hpp"
#include "trapcert/quadrature.hpp"

namespace trapcert {

namespace {

constexpr double kPi = std::numbers::pi;

void check_quasimode_args(int n, double k, double ell, double eps) {
  if (n < 2) throw DomainError("dimension must be >= 2");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be finite and > 0");
  const double expected = kPi * std::sqrt(static_cast<double>(n)) / k;
  if (!(std::abs(ell - expected) <= 1e-12 * expected)) throw DomainError("ell must equal pi sqrt(n) / k");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double s_minus_sin(double s) {
  if (std::abs(s) < 0.5) {
    const double s2 = s * s;
    // s^3/3! - s^5/5! + s^7/7! - s^9/9! + s^11/11!
    return s * s2 * (1.0 / 6 - s2 * (1.0 / 120 - s2 * (1.0 / 5040 - s2 * (1.0 / 362880 - s2 / 39916800.0))));
  }
  return s - std::sin(s);
}

QuasimodeNorms quasimode_norms(int n, double k, double ell, double eps) {
  check_quasimode_args(n, k, ell, eps);
  QuasimodeNorms q;
  q.n = n;
  q.k = k;
  q.ell = ell;
  q.eps = eps;
  q.h1k_norm_sq = k * k * std::pow(ell, n) / std::pow(2.0, n - 1);
  const double rn = std::sqrt(static_cast<double>(n));
  const double s = 2.0 * kPi * eps;  // = 2 k ell eps / sqrt(n)
  q.flux_norm_sq = std::pow(rn / (4.0 * k), n - 3) * std::pow(s_minus_sin(s), n - 1) / 16.0;
  q.flux_norm_sq_cubic_ub =
      std::pow(k * ell * eps, 3 * (n - 1)) / (std::pow(3.0, n - 1) * std::pow(k, n - 3) * std::pow(n, n));
  return q;
}

double infsup_constant(int n) {
  if (n < 2) throw DomainError("dimension must be >= 2");
  const double m = 0.5 * (n - 1);
  return std::pow(2.0, m) * std::pow(kPi, n - 1.5) / (std::pow(3.0, m) * std::pow(n, 0.75));
}

double infsup_upper(int n, double k, double ell, double eps) {
  check_quasimode_args(n, k, ell, eps);
  return infsup_constant(n) * std::pow(eps, 1.5 * (n - 1));
}

double infsup_inverse_identity(int n, double k, double a) {
  if (n < 2) throw DomainError("dimension must be >= 2");
  if (!(k > 0.0) || !(a > 0.0)) throw DomainError("k and a must be > 0");
  return std::sqrt(kPi) * std::pow(n, 0.75) * gap_base(k, a);
}

ResolventBounds resolvent_lower(double T, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be finite and > 0");
  if (std::isnan(T)) throw DomainError("T is NaN");
  ResolventBounds r;
  if (T <= 1.0) return r;
  r.c_prime_lb = (T - 1.0) / (2.0 * k);
  const double S = r.c_prime_lb * r.c_prime_lb;
  // (-1 + sqrt(1 + 8k^2 S)) / (4k^2), rationalised
  r.c_lb = 2.0 * S / (1.0 + std::sqrt(1.0 + 8.0 * k * k * S));
  return r;
}

CertRecord certify_box(int n, Index j, double k, double a, double eps) {
  CertRecord c;
  c.j = j;
  c.n = n;
  c.k = k;
  c.a = a;
  c.eps = eps;
  const double ell = kPi * std::sqrt(static_cast<double>(n)) / k;
  c.infsup_ub = infsup_upper(n, k, ell, eps);
  c.infsup_ub_inv_identity = infsup_inverse_identity(n, k, a);
  const ResolventBounds rb = resolvent_lower(c.infsup_ub_inv_identity, k);
  c.c_prime_lb = rb.c_prime_lb;
  c.c_lb = rb.c_lb;
  c.margin = c.c_lb - a;
  return c;
}

std::vector<CertRecord> certify_geometry(const std::vector<BoxSpec>& boxes, const Schedule& sched) {
  const int n = sched.dimension();
  std::vector<CertRecord> out;
  out.reserve(boxes.size());
  for (const BoxSpec& b : boxes) {
    const QuasimodeNorms q = quasimode_norms(n, b.wavenumber, b.side, b.gap);
    if (!(q.flux_norm_sq > 0.0 && q.h1k_norm_sq > 0.0 && q.flux_norm_sq <= q.flux_norm_sq_cubic_ub * (1 + 1e-12)))
      throw CertificateFailure("quasimode norms inconsistent for box " + std::to_string(b.j));

    CertRecord c = certify_box(n, b.j, b.wavenumber, b.target, b.gap);
    const double inv = 1.0 / c.infsup_ub;
    if (!(std::abs(inv - c.infsup_ub_inv_identity) <= 1e-9 * c.infsup_ub_inv_identity))
      throw CertificateFailure("inverse identity fails for box " + std::to_string(b.j) + ": " + fmt(inv) + " vs " +
                               fmt(c.infsup_ub_inv_identity));
    if (!(c.margin > 0.0))
      throw CertificateFailure("non-positive margin for box " + std::to_string(b.j) + ": c_lb = " + fmt(c.c_lb) +
                               ", a = " + fmt(c.a));
    const double kk = 2.0 * c.k * c.k;
    if (!(kk * c.c_lb * c.c_lb + c.c_lb > kk * c.a * c.a + c.a))
      throw CertificateFailure("quadratic inequality fails for box " + std::to_string(b.j));
    out.push_back(c);
  }
  return out;
}

TraceResult trace_inequality_residual(int n, double a, const SeparableTest& v, int quad_points) {
  if (n < 2) throw DomainError("dimension must be >= 2");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("sidelength must be finite and > 0");
  if (static_cast<int>(v.p.size()) != n - 1) throw DomainError("test function needs n-1 sine indices");
  for (int p : v.p)
    if (p < 1) throw DomainError("sine indices must be >= 1");
  if (v.q < 1) throw DomainError("power q must be >= 1");
  if (!std::isfinite(v.amplitude)) throw DomainError("amplitude must be finite");
  if (quad_points < 1) throw DomainError("quad_points must be >= 1");

  const double A2 = v.amplitude * v.amplitude;
  const double q = v.q;
  const double face = A2 * std::pow(a / 2.0, n - 1);
  double wave = 0.0;
  for (int p : v.p) wave += std::pow(kPi * p / a, 2);

  TraceResult r;
  r.lhs = face;
  r.v_norm_sq = face * a / (2.0 * q + 1.0);
  r.grad_norm_sq = face * (a / (2.0 * q + 1.0) * wave + q * q / (a * (2.0 * q - 1.0)));
  r.rhs = 2.0 * std::sqrt(r.v_norm_sq) * std::sqrt(r.grad_norm_sq);
  r.second_form_k1 = r.grad_norm_sq + r.v_norm_sq;
  r.second_form_k10 = (r.grad_norm_sq + 100.0 * r.v_norm_sq) / 10.0;

  // Same integrals factor by factor with the Gauss rule.
  double sin_sq = 1.0;
  std::vector<double> sin_f, cos_f;
  for (int p : v.p) {
    const double w = kPi * p / a;
    sin_f.push_back(integrate([w](double x) { return std::pow(std::sin(w * x), 2); }, 0.0, a, quad_points));
    cos_f.push_back(integrate([w](double x) { return std::pow(std::cos(w * x), 2); }, 0.0, a, quad_points));
    sin_sq *= sin_f.back();
  }
  const double poly = integrate([&](double x) { return std::pow(1.0 - x / a, 2 * v.q); }, 0.0, a, quad_points);
  const double dpoly =
      integrate([&](double x) { return std::pow(q / a, 2) * std::pow(1.0 - x / a, 2 * v.q - 2); }, 0.0, a, quad_points);
  double grad_q = A2 * sin_sq * dpoly;
  for (std::size_t i = 0; i < v.p.size(); ++i) {
    const double w = kPi * v.p[i] / a;
    double others = 1.0;
    for (std::size_t m = 0; m < v.p.size(); ++m)
      if (m != i) others *= sin_f[m];
    grad_q += A2 * w * w * cos_f[i] * others * poly;
  }
  r.lhs_quadrature = A2 * sin_sq;
  r.rhs_quadrature = 2.0 * std::sqrt(A2 * sin_sq * poly) * std::sqrt(grad_q);

  const double tol = 1e-14 * std::max(r.rhs, r.lhs);
  r.holds = r.lhs <= r.rhs + tol && r.rhs <= r.second_form_k1 * (1 + 1e-14) + tol &&
            r.rhs <= r.second_form_k10 * (1 + 1e-14) + tol;
  return r;
}

}  // namespace trapcert
