#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "taperqpe/types.hpp"

namespace taperqpe {

/// Dimensionless phase on the unit circle; the eigenvalue is e^{2*pi*i*theta}.
template <class Scalar>
struct PhaseT {
  Scalar value{};

  PhaseT() = default;
  explicit PhaseT(Scalar theta) : value(theta) {
    if (!(theta >= Scalar(0) && theta < Scalar(1)))
      throw std::invalid_argument("Phase: theta must lie in [0, 1)");
  }
};

using Phase = PhaseT<Real>;

/// Geometry of the ancilla register: ell precision qubits plus m boost qubits
/// give p = ell + m qubits, a grid of N = 2^p phase estimates with spacing
/// 1/N, target precision delta = 2^{-ell-1}, a half-window K of estimates
/// around the best one, and bandwidth fraction W = (2K+1)/(2N).
template <class Scalar>
struct QpeGridT {
  int ell = 0;
  int m = 0;
  int p = 0;
  Index N = 0;
  Index K = 0;
  Scalar delta{};
  Scalar W{};
};

using QpeGrid = QpeGridT<Real>;

/// Default half-window: 2^{m-1}-1 for m >= 2, zero for m in {0, 1}.
inline Index default_half_window(int m) {
  return m >= 2 ? (Index{1} << (m - 1)) - 1 : 0;
}

/// Builds a grid from qubit counts. Pass K_override >= 0 to replace the
/// default half-window. Rejects combinations with 2K+1 > N or W >= 1/2.
template <class Scalar = Real>
QpeGridT<Scalar> make_grid(int ell, int m, Index K_override = -1) {
  if (ell < 1) throw std::invalid_argument("make_grid: ell must be >= 1");
  if (m < 0) throw std::invalid_argument("make_grid: m must be >= 0");
  if (ell + m > 62) throw std::invalid_argument("make_grid: p too large");

  QpeGridT<Scalar> g;
  g.ell = ell;
  g.m = m;
  g.p = ell + m;
  g.N = Index{1} << g.p;
  g.K = K_override >= 0 ? K_override : default_half_window(m);
  if (2 * g.K + 1 > g.N)
    throw std::invalid_argument("make_grid: window 2K+1 exceeds grid size N");
  g.delta = std::ldexp(Scalar(1), -(ell + 1));
  g.W = Scalar(2 * g.K + 1) / Scalar(2 * g.N);
  if (!(g.W < Scalar(0.5)))
    throw std::invalid_argument("make_grid: bandwidth W must be < 1/2");
  return g;
}

template <class Scalar>
struct NearestEstimateT {
  Index k_star{};  // index of the closest grid estimate, in {0, ..., N-1}
  Scalar delta{};  // theta - k_star/N wrapped to [-1/2N, 1/2N]
};

using NearestEstimate = NearestEstimateT<Real>;

/// Closest grid estimate of theta under circular (mod-1) distance, plus the
/// signed offset Delta. A tie at |Delta| = 1/2N resolves toward the smaller
/// k, i.e. Delta = +1/2N, and theta = k_star/N + Delta holds exactly (mod 1).
template <class Scalar>
NearestEstimateT<Scalar> delta_of(const QpeGridT<Scalar>& grid, PhaseT<Scalar> theta) {
  const Scalar x = theta.value * Scalar(grid.N);
  // ceil(x - 1/2) rounds halves down, which is the tie-break toward smaller k.
  const auto unwrapped = static_cast<Index>(std::ceil(x - Scalar(0.5)));
  NearestEstimateT<Scalar> r;
  r.k_star = ((unwrapped % grid.N) + grid.N) % grid.N;
  r.delta = theta.value - Scalar(unwrapped) / Scalar(grid.N);
  return r;
}

/// Circular (mod-1) distance between two phases.
template <class Scalar>
Scalar circular_distance(Scalar a, Scalar b) {
  Scalar d = std::abs(a - b);
  d -= std::floor(d);
  return std::min(d, Scalar(1) - d);
}

}  // namespace taperqpe
