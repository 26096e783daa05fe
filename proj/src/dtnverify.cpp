#include "trapcert/dtnverify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trapcert/errors.hpp"
#include "trapcert/specfun/bessel.hpp"
#include "trapcert/specfun/halfint.hpp"

namespace trapcert {

namespace {

using specfun::CylEvalScaled;
using specfun::SphEvalScaled;

constexpr double kPi = std::numbers::pi;

ScaledReal biggest(std::initializer_list<ScaledReal> xs) {
  ScaledReal m(0.0);
  for (const ScaledReal& x : xs) m = specfun::max_abs(m, x);
  return m.abs();
}

double finite_or_throw(const ScaledReal& x, const char* what) {
  const double d = x.to_double_saturating();
  if (std::isinf(d)) throw RangeError(std::string(what) + " overflows binary64");
  return d;
}

ScaledCheck a_from(const CylEvalScaled& c) {
  const double t = c.t, nu = c.nu;
  const ScaledReal m2 = c.modulus_sq();
  const ScaledReal n2 = c.deriv_modulus_sq();
  const ScaledReal t1 = m2 * (t * t - nu * nu);
  const ScaledReal t2 = n2 * (t * t);
  const ScaledReal t3(4.0 * t / kPi);
  return {t1 + t2 - t3, biggest({m2 * (t * t), m2 * (nu * nu), t2, t3})};
}

ScaledCheck b_from(const SphEvalScaled& s, double alpha) {
  const double rho = s.t;
  const double lb = static_cast<double>(s.m) * (s.m + s.n - 2);
  const ScaledReal h2 = s.h_mod_sq();
  const ScaledReal hp2 = s.hp_mod_sq();
  const ScaledReal re = s.re_hp_conj_h();
  const ScaledReal t1 = h2 * (rho * rho - lb);
  const ScaledReal t2 = hp2 * (rho * rho);
  const ScaledReal t3 = re * (alpha * rho);
  const ScaledReal t4(4.0 / kPi * std::pow(rho, 3 - s.n));
  return {t1 + t2 + t3 - t4, biggest({h2 * (rho * rho), h2 * lb, t2, t3, t4})};
}

ScaledCheck re_from(const SphEvalScaled& s) {
  const ScaledReal a = s.jp * s.j, b = s.yp * s.y;
  return {a + b, biggest({a, b})};
}

double im_residual_from(const SphEvalScaled& s) {
  const ScaledReal w(2.0 / (kPi * std::pow(s.t, s.n - 1)));
  return ((s.im_hp_conj_h() - w) / w).abs().to_double_saturating();
}

}  // namespace

double ScaledCheck::relative() const {
  const ScaledReal one(1.0);
  const ScaledReal denom = scale > one ? scale : one;
  return (value / denom).to_double_saturating();
}

bool ScaledCheck::nonpositive(double tol) const {
  const ScaledReal one(1.0);
  const ScaledReal denom = scale > one ? scale : one;
  return value <= ScaledReal(tol) * denom;
}

std::complex<double> dtn_eigenvalue(int m, int n, double k, double R) {
  if (!(k > 0.0) || !(R > 0.0)) throw DomainError("k and R must be > 0");
  const SphEvalScaled s = specfun::spherical_hankel_scaled(m, n, k * R);
  const ScaledReal h2 = s.h_mod_sq();
  return {finite_or_throw(s.re_hp_conj_h() / h2 * k, "Re lambda"),
          finite_or_throw(s.im_hp_conj_h() / h2 * k, "Im lambda")};
}

ScaledCheck a_nu_scaled(double nu, double t) { return a_from(specfun::cyl_bessel_scaled(nu, t)); }

double a_nu(double nu, double t) { return finite_or_throw(a_nu_scaled(nu, t).value, "A_nu"); }

ScaledCheck b_m_scaled(int m, int n, double rho, double alpha) {
  return b_from(specfun::spherical_hankel_scaled(m, n, rho), alpha);
}

double b_m(int m, int n, double rho, double alpha) { return finite_or_throw(b_m_scaled(m, n, rho, alpha).value, "B_m"); }

ScaledCheck b_m_closed_form(int m, int n, double rho, double alpha) {
  const specfun::HankelPair hp = specfun::halfint_spherical_hankel(m, n, rho);
  const double lb = static_cast<double>(m) * (m + n - 2);
  const double h2 = std::norm(hp.value);
  const double hp2 = std::norm(hp.deriv);
  const double re = std::real(hp.deriv * std::conj(hp.value));
  const double t1 = (rho * rho - lb) * h2, t2 = rho * rho * hp2, t3 = alpha * rho * re;
  const double t4 = 4.0 / kPi * std::pow(rho, 3 - n);
  const double scale = std::max({rho * rho * h2, lb * h2, std::abs(t2), std::abs(t3), t4});
  return {ScaledReal(t1 + t2 + t3 - t4), ScaledReal(scale)};
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) throw DomainError("invalid log grid");
  std::vector<double> g(static_cast<std::size_t>(points));
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  g.back() = hi;
  return g;
}

std::vector<double> sweep_alphas(const SweepSpec& spec, int n) {
  std::vector<double> a = spec.alphas;
  if (a.empty()) a = {std::max(1.0, n - 2.0), n - 1.0, static_cast<double>(n)};
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

SweepSummary verify_sweep(const SweepSpec& spec, const std::function<void(const ModeCheckRecord&)>& sink) {
  if (spec.m_max < 0) throw DomainError("mMax must be >= 0");
  for (int n : spec.dimensions)
    if (n < 2) throw DomainError("sweep dimensions must be >= 2");
  const std::vector<double> rhos = log_grid(spec.rho_min, spec.rho_max, spec.rho_points);

  SweepSummary sum;
  for (int n : spec.dimensions) {
    const std::vector<double> alphas = sweep_alphas(spec, n);
    const double threshold = std::max(1.0, n - 2.0);
    for (int m = 0; m <= spec.m_max; ++m) {
      const double nu = specfun::spherical_order(m, n);
      for (double rho : rhos) {
        ++sum.mode_points;
        ModeCheckRecord base;
        base.n = n;
        base.m = m;
        base.nu = nu;
        base.rho = rho;
        base.a_asserted = nu >= 0.5;
        SphEvalScaled s;
        bool ok = true;
        try {
          s = specfun::spherical_hankel_scaled(m, n, rho);
        } catch (const std::exception&) {
          ok = false;
        }
        if (!ok) {
          ++sum.evaluation_failures;
          for (double alpha : alphas) {
            ModeCheckRecord r = base;
            r.alpha = alpha;
            r.failed = true;
            ++sum.records;
            if (sink) sink(r);
          }
          continue;
        }

        const ScaledCheck a = a_from(s.cyl);
        base.a_nu = a.value.to_double_saturating();
        base.a_rel = a.relative();
        base.a_ok = a.nonpositive(spec.tol);
        if (base.a_asserted) {
          sum.a_max_rel = std::max(sum.a_max_rel, base.a_rel);
          if (!base.a_ok) ++sum.a_violations;
        } else if (!base.a_ok) {
          ++sum.a_probe_positive;
        }

        const ScaledCheck re = re_from(s);
        base.re_sign = re.value.to_double_saturating();
        base.re_rel = re.relative();
        base.re_ok = re.nonpositive(spec.tol);
        sum.re_max_rel = std::max(sum.re_max_rel, base.re_rel);
        if (!base.re_ok) ++sum.re_violations;

        base.im_residual = im_residual_from(s);
        base.im_ok = base.im_residual <= spec.im_tol;
        sum.im_max_residual = std::max(sum.im_max_residual, base.im_residual);
        if (!base.im_ok) ++sum.im_violations;

        for (double alpha : alphas) {
          ModeCheckRecord r = base;
          r.alpha = alpha;
          r.b_asserted = alpha >= threshold;
          const ScaledCheck b = b_from(s, alpha);
          r.b_m = b.value.to_double_saturating();
          r.b_rel = b.relative();
          r.b_ok = b.nonpositive(spec.tol);
          if (r.b_asserted) {
            sum.b_max_rel = std::max(sum.b_max_rel, r.b_rel);
            if (!r.b_ok) ++sum.b_violations;
          } else if (!r.b_ok) {
            ++sum.b_probe_positive;
          }
          ++sum.records;
          if (sink) sink(r);
        }
      }
    }
  }
  return sum;
}

}  // namespace trapcert
