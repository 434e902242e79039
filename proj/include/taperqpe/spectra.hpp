#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "taperqpe/kernels.hpp"
#include "taperqpe/lattice.hpp"
#include "taperqpe/quadrature.hpp"
#include "taperqpe/simulator.hpp"
#include "taperqpe/tapers.hpp"

namespace taperqpe {

/// Probability of landing within K grid steps of the best estimate when the
/// true phase sits at offset Delta: sum_{k=-K}^{K} |dtft(Delta - k/N)|^2.
template <class Scalar>
Scalar window_probability(const TaperT<Scalar>& taper, Scalar delta, Index K) {
  const Index N = taper.size();
  Scalar acc = 0;
  for (Index k = -K; k <= K; ++k)
    acc += std::norm(dtft(taper, delta - Scalar(k) / Scalar(N)));
  return acc;
}

/// Exact success objective: probability mass on every estimate within
/// circular distance delta of theta (no window truncation).
template <class Scalar>
Scalar success_probability(const TaperT<Scalar>& taper, PhaseT<Scalar> theta,
                           const QpeGridT<Scalar>& grid) {
  Scalar acc = 0;
  for (Index k = 0; k < grid.N; ++k) {
    const Scalar estimate = Scalar(k) / Scalar(grid.N);
    if (circular_distance(theta.value, estimate) <= grid.delta)
      acc += std::norm(dtft(taper, theta.value - estimate));
  }
  return acc;
}

/// Probability on the two estimates straddling the true phase. At Delta = 0
/// the second point is taken one grid step below.
template <class Scalar>
Scalar two_nearest_probability(const TaperT<Scalar>& taper, Scalar delta) {
  const Index N = taper.size();
  const Scalar other = delta == Scalar(0) ? delta - Scalar(1) / Scalar(N)
                                          : delta - (delta > 0 ? Scalar(1) : Scalar(-1)) / Scalar(N);
  return std::norm(dtft(taper, delta)) + std::norm(dtft(taper, other));
}

/// One row of a Delta sweep: label -> success probability.
template <class Scalar>
struct SweepRecordT {
  Scalar delta{};
  std::vector<std::pair<std::string, Scalar>> values;
};

using SweepRecord = SweepRecordT<Real>;

enum class SweepRange { Half, Full };  // [0, 1/2N] or [-1/2N, 1/2N]

/// Sweeps Delta uniformly and evaluates, per taper, the nearest-estimate,
/// windowed-K, and two-nearest probabilities (suffixes .nearest, .window,
/// .two_nearest). Points are assembled in order regardless of thread count.
template <class Scalar>
std::vector<SweepRecordT<Scalar>> delta_sweep(const std::vector<TaperT<Scalar>>& tapers,
                                              const QpeGridT<Scalar>& grid, int num_points,
                                              SweepRange range = SweepRange::Half,
                                              int threads = 1) {
  if (num_points < 2) throw std::invalid_argument("delta_sweep: need at least 2 points");
  const Scalar hi = Scalar(1) / Scalar(2 * grid.N);
  const Scalar lo = range == SweepRange::Half ? Scalar(0) : -hi;

  std::vector<SweepRecordT<Scalar>> records(num_points);
  auto run = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const Scalar d = lo + (hi - lo) * Scalar(i) / Scalar(num_points - 1);
      auto& rec = records[i];
      rec.delta = d;
      for (const auto& taper : tapers) {
        rec.values.emplace_back(taper.label + ".nearest", window_probability(taper, d, Index{0}));
        rec.values.emplace_back(taper.label + ".window", window_probability(taper, d, grid.K));
        rec.values.emplace_back(taper.label + ".two_nearest", two_nearest_probability(taper, d));
      }
    }
  };

  if (threads <= 1) {
    run(0, num_points);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (num_points + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(num_points, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return records;
}

/// Average of window_probability over Delta ~ Uniform[-1/2N, 1/2N] by
/// Gauss-Legendre quadrature (uniform density N).
template <class Scalar>
Scalar average_success(const TaperT<Scalar>& taper, const QpeGridT<Scalar>& grid,
                       int quadrature_points = 64) {
  if (quadrature_points < 8)
    throw std::invalid_argument("average_success: need at least 8 quadrature points");
  const Scalar half = Scalar(1) / Scalar(2 * grid.N);
  const Scalar integral = integrate(
      [&](Scalar d) { return window_probability(taper, d, grid.K); }, -half, half,
      quadrature_points);
  return integral * Scalar(grid.N);
}

/// Closed-form route to the same average: the quadratic form of the
/// offset-averaged kernel.
template <class Scalar>
Scalar average_success_form(const TaperT<Scalar>& taper, const QpeGridT<Scalar>& grid) {
  return quadratic_form(average_kernel(grid), taper);
}

/// Window probability at the worst offsets Delta = +-1/(2N) (the worst case
/// for the tophat and DPSS tapers; the sweep exposes the full curve so the
/// claim stays checkable).
template <class Scalar>
Scalar worst_case_success(const TaperT<Scalar>& taper, const QpeGridT<Scalar>& grid) {
  const Scalar half = Scalar(1) / Scalar(2 * grid.N);
  return std::min(window_probability(taper, half, grid.K),
                  window_probability(taper, -half, grid.K));
}

/// Difference between the simulated amplitude magnitude at estimate k and the
/// analytic DTFT magnitude; the two routes must agree to 1e-10.
template <class Scalar>
Scalar convolution_identity_check(const TaperT<Scalar>& taper, PhaseT<Scalar> theta, Index k,
                                  const QpeGridT<Scalar>& grid) {
  SpectralInputT<Scalar> input({{theta, std::complex<Scalar>(1, 0)}});
  const auto state = run_tqpe(taper, input, grid);
  const Scalar simulated = std::abs(state.amplitudes(k, 0));
  const Scalar analytic = std::abs(dtft(taper, theta.value - Scalar(k) / Scalar(grid.N)));
  return simulated - analytic;
}

}  // namespace taperqpe
