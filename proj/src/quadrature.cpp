#include "trapcert/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "trapcert/errors.hpp"

namespace trapcert {

GaussRule gauss_legendre(int N) {
  if (N < 1) throw DomainError("quadrature needs at least one point");
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(N));
  r.weights.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < (N + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= N; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = N * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(N - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(N - 1 - i)] = w;
  }
  if (N % 2 == 1) r.nodes[static_cast<std::size_t>(N / 2)] = 0.0;
  return r;
}

double integrate(const std::function<double(double)>& f, double a, double b, int N) {
  const GaussRule r = gauss_legendre(N);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * s;
}

}  // namespace trapcert
