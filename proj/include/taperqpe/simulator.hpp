#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "taperqpe/lattice.hpp"
#include "taperqpe/tapers.hpp"
#include "taperqpe/types.hpp"

namespace taperqpe {

/// Spectral decomposition of the system input state: eigenphases theta_r with
/// amplitudes c_r, sum_r |c_r|^2 = 1.
template <class Scalar>
struct SpectralInputT {
  std::vector<std::pair<PhaseT<Scalar>, std::complex<Scalar>>> components;

  explicit SpectralInputT(std::vector<std::pair<PhaseT<Scalar>, std::complex<Scalar>>> parts)
      : components(std::move(parts)) {
    if (components.empty())
      throw std::invalid_argument("SpectralInput: need at least one eigenphase");
    Scalar total = 0;
    for (const auto& [theta, c] : components) total += std::norm(c);
    if (std::abs(total - Scalar(1)) > Scalar(1e-12))
      throw std::invalid_argument("SpectralInput: amplitudes must have unit total weight");
    for (std::size_t a = 0; a < components.size(); ++a)
      for (std::size_t b = a + 1; b < components.size(); ++b)
        if (components[a].first.value == components[b].first.value)
          throw std::invalid_argument("SpectralInput: eigenphases must be distinct");
  }

  Index dimension() const { return static_cast<Index>(components.size()); }
};

using SpectralInput = SpectralInputT<Real>;

/// Joint amplitude tensor after the circuit: ancilla estimate index k (rows)
/// by eigenvector index r (columns). Exactly rank one per column.
template <class Scalar>
struct JointStateT {
  ComplexMatrix<Scalar> amplitudes;  // N x d

  Index grid_size() const { return amplitudes.rows(); }
  Index dimension() const { return amplitudes.cols(); }
};

using JointState = JointStateT<Real>;

/// Exact statevector run of the tapered-QPE circuit: load the taper on the
/// ancilla, apply the controlled-U^{2^j} cascade (diagonal in the eigenbasis,
/// so component n of branch r picks up e^{2 pi i theta_r n}), then the inverse
/// QFT |n> -> (1/sqrt N) sum_k e^{-2 pi i nk/N} |k>.
template <class Scalar>
JointStateT<Scalar> run_tqpe(const TaperT<Scalar>& taper, const SpectralInputT<Scalar>& input,
                             const QpeGridT<Scalar>& grid) {
  if (taper.size() != grid.N)
    throw std::invalid_argument("run_tqpe: taper length does not match grid size");

  const Index N = grid.N;
  const Index d = input.dimension();
  JointStateT<Scalar> state{ComplexMatrix<Scalar>(N, d)};

  Eigen::FFT<Scalar> fft;
  const Scalar root = std::sqrt(Scalar(N));
  ComplexVector<Scalar> column(N), transformed(N);
  for (Index r = 0; r < d; ++r) {
    const auto& [theta, weight] = input.components[r];
    for (Index n = 0; n < N; ++n)
      column[n] = weight * taper.amps[n] * unit_phasor(2 * pi_v<Scalar> * theta.value * Scalar(n));
    fft.fwd(transformed, column);  // sum_n e^{-2 pi i nk/N}, unscaled
    state.amplitudes.col(r) = transformed / root;
  }
  return state;
}

/// Marginal readout distribution over the ancilla estimate index.
template <class Scalar>
RealVector<Scalar> readout_distribution(const JointStateT<Scalar>& state) {
  return state.amplitudes.cwiseAbs2().rowwise().sum();
}

/// Probability mass on delta-close estimates, resolved per eigenphase branch
/// and recombined. Zero-amplitude components are skipped.
template <class Scalar>
Scalar coherent_success(const JointStateT<Scalar>& state, const SpectralInputT<Scalar>& input,
                        const QpeGridT<Scalar>& grid) {
  if (state.dimension() != input.dimension())
    throw std::invalid_argument("coherent_success: state/input dimension mismatch");
  Scalar total = 0;
  for (Index r = 0; r < state.dimension(); ++r) {
    const auto& [theta, weight] = input.components[r];
    if (std::norm(weight) == Scalar(0)) continue;
    for (Index k = 0; k < grid.N; ++k)
      if (circular_distance(theta.value, Scalar(k) / Scalar(grid.N)) <= grid.delta)
        total += std::norm(state.amplitudes(k, r));
  }
  return total;
}

/// Samples measurement shots from the readout distribution (convenience
/// feature; deterministic for a fixed seed).
template <class Scalar>
std::vector<std::int64_t> sample_readout(const JointStateT<Scalar>& state, std::int64_t shots,
                                         std::uint64_t seed) {
  const RealVector<Scalar> probs = readout_distribution(state);
  std::vector<double> weights(probs.size());
  for (Index k = 0; k < probs.size(); ++k) weights[k] = static_cast<double>(probs[k]);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::int64_t> dist(weights.begin(), weights.end());
  std::vector<std::int64_t> counts(static_cast<std::size_t>(probs.size()), 0);
  for (std::int64_t s = 0; s < shots; ++s) ++counts[static_cast<std::size_t>(dist(rng))];
  return counts;
}

}  // namespace taperqpe
