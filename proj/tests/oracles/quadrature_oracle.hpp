#pragma once

// Tensor-product Gauss-Legendre integrals of the quasimode
// u = prod_i sin(k x_i / sqrt(n)), using Boost's rule rather than the
// library's own nodes.

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using Rule = boost::math::quadrature::gauss<double, 40>;

/// int over [0, h]^dims of f(x).
inline double cube_integral(int dims, double h, const std::function<double(const std::vector<double>&)>& f) {
  std::vector<double> x(static_cast<std::size_t>(dims));
  std::function<double(int)> rec = [&](int axis) -> double {
    if (axis == dims) return f(x);
    return Rule::integrate(
        [&](double t) {
          x[static_cast<std::size_t>(axis)] = t;
          return rec(axis + 1);
        },
        0.0, h);
  };
  return rec(0);
}

/// ||grad u||^2 + k^2 ||u||^2 over the cube [0, ell]^n.
inline double h1k_norm_sq(int n, double k, double ell) {
  const double w = k / std::sqrt(static_cast<double>(n));
  return cube_integral(n, ell, [&](const std::vector<double>& x) {
    double grad = 0.0, u2 = 1.0;
    for (int i = 0; i < n; ++i) {
      double others = 1.0;
      for (int m = 0; m < n; ++m)
        if (m != i) others *= std::sin(w * x[static_cast<std::size_t>(m)]);
      const double d = w * std::cos(w * x[static_cast<std::size_t>(i)]) * others;
      grad += d * d;
      u2 *= std::sin(w * x[static_cast<std::size_t>(i)]);
    }
    return grad + k * k * u2 * u2;
  });
}

/// ||d_nu u||^2 over the opening square [0, ell eps]^(n-1) of the bottom face.
inline double flux_norm_sq(int n, double k, double ell, double eps) {
  const double w = k / std::sqrt(static_cast<double>(n));
  return cube_integral(n - 1, ell * eps, [&](const std::vector<double>& x) {
    double p = 1.0;
    for (double xi : x) p *= std::sin(w * xi);
    return w * w * p * p;
  });
}

}  // namespace oracle
