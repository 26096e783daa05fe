#pragma once

#include <vector>

#include "trapcert/geometry.hpp"
#include "trapcert/sequences.hpp"

// The quasimode u = prod_i sin(k x_i / sqrt(n)) on the cube [0, ell]^n,
// ell = pi sqrt(n) / k, and the chain that turns its two norms into lower
// bounds on the cut-off resolvent norm C_{k,R}. Nothing here depends on R:
// each bound holds for every R > R_Gamma.

namespace trapcert {

struct QuasimodeNorms {
  int n = 0;
  double k = 0.0;
  double ell = 0.0;
  double eps = 0.0;
  double h1k_norm_sq = 0.0;             // k^2 ell^n / 2^(n-1)
  double flux_norm_sq = 0.0;            // normal derivative over the opening
  double flux_norm_sq_cubic_ub = 0.0;   // same with t - sin t <= t^3/6
};

/// Throws DomainError unless ell = pi sqrt(n)/k to 1e-12 relative and eps in (0, 1).
QuasimodeNorms quasimode_norms(int n, double k, double ell, double eps);

/// s - sin s, by its Taylor series below 0.5.
double s_minus_sin(double s);

/// c_n = 2^((n-1)/2) pi^(n-3/2) / (3^((n-1)/2) n^(3/4)).
double infsup_constant(int n);

/// c_n eps^(3(n-1)/2), an upper bound on the inf-sup constant.
double infsup_upper(int n, double k, double ell, double eps);

/// sqrt(pi) n^(3/4) (1 + 2k sqrt(2k^2 a^2 + a)), the exact reciprocal of
/// infsup_upper when eps comes from gap_fraction(n, k, a).
double infsup_inverse_identity(int n, double k, double a);

struct ResolventBounds {
  double c_prime_lb = 0.0;
  double c_lb = 0.0;
};

/// From a lower bound T on 1/beta: C' >= (T-1)/(2k) and C >= the positive root
/// of 2k^2 C^2 + C = ((T-1)/(2k))^2. Both clamp to 0 for T <= 1.
ResolventBounds resolvent_lower(double T, double k);

struct CertRecord {
  Index j = 0;
  int n = 0;
  double k = 0.0;
  double a = 0.0;
  double eps = 0.0;
  double infsup_ub = 0.0;
  double infsup_ub_inv_identity = 0.0;
  double c_prime_lb = 0.0;
  double c_lb = 0.0;
  double margin = 0.0;
  bool holds_for_every_r_above_r_gamma = true;
};

CertRecord certify_box(int n, Index j, double k, double a, double eps);

/// One record per box in index order. Throws CertificateFailure when a
/// margin is not positive, the inverse identity fails by more than 1e-9, or
/// the quadratic inequality 2k^2 C^2 + C > 2k^2 a^2 + a does not hold.
std::vector<CertRecord> certify_geometry(const std::vector<BoxSpec>& boxes, const Schedule& sched);

/// v = amplitude * prod_{i<n} sin(pi p_i x_i / a) * (1 - x_n/a)^q on [0, a]^n.
struct SeparableTest {
  std::vector<int> p;  // n-1 entries, each >= 1
  int q = 1;           // >= 1
  double amplitude = 1.0;
};

struct TraceResult {
  double lhs = 0.0;          // ||v||^2 on the boundary
  double rhs = 0.0;          // 2 ||v|| ||grad v||
  double v_norm_sq = 0.0;
  double grad_norm_sq = 0.0;
  double lhs_quadrature = 0.0;
  double rhs_quadrature = 0.0;
  double second_form_k1 = 0.0;   // k^-1 (||grad v||^2 + k^2 ||v||^2), k = 1
  double second_form_k10 = 0.0;  // same, k = 10
  bool holds = true;             // lhs <= rhs <= both second forms
};

/// Closed-form integrals, cross-checked with a quad_points tensor Gauss rule.
TraceResult trace_inequality_residual(int n, double a, const SeparableTest& v, int quad_points);

}  // namespace trapcert
