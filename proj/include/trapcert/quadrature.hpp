#pragma once

#include <functional>
#include <vector>

namespace trapcert {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// N-point Gauss-Legendre rule by Newton iteration on P_N.
GaussRule gauss_legendre(int N);

/// int_a^b f with an N-point rule.
double integrate(const std::function<double(double)>& f, double a, double b, int N);

}  // namespace trapcert
