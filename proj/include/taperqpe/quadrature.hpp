#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "taperqpe/types.hpp"

namespace taperqpe {

template <class Scalar>
struct QuadratureRuleT {
  RealVector<Scalar> nodes;    // on [-1, 1]
  RealVector<Scalar> weights;
};

using QuadratureRule = QuadratureRuleT<Real>;

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on the
/// Legendre recurrence.
template <class Scalar = Real>
QuadratureRuleT<Scalar> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  QuadratureRuleT<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const Scalar eps = std::numeric_limits<Scalar>::epsilon() * 4;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar z = std::cos(pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar pp = 0;
    for (int it = 0; it < 100; ++it) {
      Scalar p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const Scalar p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / Scalar(j);
      }
      pp = Scalar(n) * (z * p1 - p2) / (z * z - 1);
      const Scalar dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= eps) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const Scalar w = 2 / ((1 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// Integrates f over [a, b] with an n-node Gauss-Legendre rule.
template <class Scalar, class F>
Scalar integrate(F&& f, Scalar a, Scalar b, int n) {
  const auto rule = gauss_legendre<Scalar>(n);
  const Scalar mid = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  Scalar acc = 0;
  for (int i = 0; i < n; ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

}  // namespace taperqpe
