#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "taperqpe/lattice.hpp"
#include "taperqpe/types.hpp"

namespace taperqpe {

/// Unit-norm amplitude profile loaded on the ancilla register before the
/// controlled-unitary cascade.
template <class Scalar>
struct TaperT {
  ComplexVector<Scalar> amps;
  std::string label;

  Index size() const { return amps.size(); }
};

using Taper = TaperT<Real>;

/// Wraps user-supplied amplitudes as a taper, normalizing them.
template <class Scalar>
TaperT<Scalar> make_taper(ComplexVector<Scalar> amps, std::string label) {
  const Scalar norm = amps.norm();
  if (!(norm > Scalar(0)))
    throw std::invalid_argument("make_taper: amplitudes must not be all zero");
  amps /= norm;
  return {std::move(amps), std::move(label)};
}

/// Uniform-superposition taper of standard QPE (rectangular window).
template <class Scalar>
TaperT<Scalar> tophat(const QpeGridT<Scalar>& grid) {
  ComplexVector<Scalar> amps =
      ComplexVector<Scalar>::Constant(grid.N, std::complex<Scalar>(Scalar(1) / std::sqrt(Scalar(grid.N)), 0));
  return {std::move(amps), "tophat"};
}

/// phi[n] = sin(pi n / N) / sqrt(N/2), renormalized.
template <class Scalar>
TaperT<Scalar> sine_taper(const QpeGridT<Scalar>& grid) {
  ComplexVector<Scalar> amps(grid.N);
  const Scalar scale = Scalar(1) / std::sqrt(Scalar(grid.N) / 2);
  for (Index n = 0; n < grid.N; ++n)
    amps[n] = std::complex<Scalar>(std::sin(pi_v<Scalar> * Scalar(n) / Scalar(grid.N)) * scale, 0);
  return make_taper(std::move(amps), "sine");
}

/// phi[n] = cos(pi n / N) / sqrt(N/2), renormalized.
template <class Scalar>
TaperT<Scalar> cosine_taper(const QpeGridT<Scalar>& grid) {
  ComplexVector<Scalar> amps(grid.N);
  const Scalar scale = Scalar(1) / std::sqrt(Scalar(grid.N) / 2);
  for (Index n = 0; n < grid.N; ++n)
    amps[n] = std::complex<Scalar>(std::cos(pi_v<Scalar> * Scalar(n) / Scalar(grid.N)) * scale, 0);
  return make_taper(std::move(amps), "cosine");
}

/// Grid-shifting taper phi^Delta[n] = e^{-2*pi*i*Delta*n} / sqrt(N): the
/// modulation aligns the estimate grid with a phase offset by Delta, giving
/// unit success probability there (for K = 0).
template <class Scalar>
TaperT<Scalar> phi_shift(const QpeGridT<Scalar>& grid, Scalar delta) {
  if (std::abs(delta) > Scalar(1) / Scalar(2 * grid.N) + Scalar(1e-15))
    throw std::invalid_argument("phi_shift: |Delta| must be <= 1/(2N)");
  ComplexVector<Scalar> amps(grid.N);
  const Scalar scale = Scalar(1) / std::sqrt(Scalar(grid.N));
  for (Index n = 0; n < grid.N; ++n)
    amps[n] = unit_phasor(Scalar(-2) * pi_v<Scalar> * delta * Scalar(n)) * scale;
  return {std::move(amps), delta >= 0 ? "phi_plus" : "phi_minus"};
}

/// Entrywise modulation by e^{-2*pi*i*Delta*n}; carries an eigenvector of the
/// Delta = 0 window kernel to one of the Delta-shifted kernel. Norm preserved.
template <class Scalar>
TaperT<Scalar> modulate(const TaperT<Scalar>& taper, Scalar delta) {
  TaperT<Scalar> out = taper;
  for (Index n = 0; n < out.size(); ++n)
    out.amps[n] *= unit_phasor(Scalar(-2) * pi_v<Scalar> * delta * Scalar(n));
  return out;
}

/// Discrete-time Fourier transform (1/sqrt(N)) sum_n phi[n] e^{+2 pi i n f}.
/// |dtft(theta - k/N)|^2 is the probability of reading estimate k.
template <class Scalar>
std::complex<Scalar> dtft(const TaperT<Scalar>& taper, Scalar f) {
  const Index n = taper.size();
  std::complex<Scalar> acc{};
  const Scalar step = 2 * pi_v<Scalar> * f;
  for (Index i = 0; i < n; ++i)
    acc += taper.amps[i] * unit_phasor(step * Scalar(i));
  return acc / std::sqrt(Scalar(n));
}

}  // namespace taperqpe
