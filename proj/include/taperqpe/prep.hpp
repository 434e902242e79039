#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "taperqpe/eigensolve.hpp"
#include "taperqpe/lattice.hpp"
#include "taperqpe/tapers.hpp"
#include "taperqpe/types.hpp"

namespace taperqpe {

/// Number of frequency-domain parameters sufficient to describe an
/// O(eps)-close approximate taper: 2 floor(175 (ln(10/eps) + 1)^2) + 1.
template <class Scalar = Real>
Index n_prime(Scalar eps) {
  if (!(eps > 0)) throw std::domain_error("n_prime: need eps > 0");
  const Scalar inner = 175 * std::pow(std::log(10 / eps) + 1, Scalar(2));
  return 2 * static_cast<Index>(std::floor(inner)) + 1;
}

/// Truncated central-lobe description of a taper's spectrum plus the grid it
/// belongs to.
template <class Scalar>
struct PrepPlanT {
  Scalar eps{};                      // requested failure probability (0 when bins were given directly)
  Index n_prime = 0;                 // kept parameter count
  ComplexVector<Scalar> lobe_amps;   // kept bins in lobe order, unit norm
  Index center_offset = 0;           // lobe peak bin in the centered spectrum
  Scalar kept_mass{};                // spectral mass inside the kept bins, 1 - eps_trunc
  QpeGridT<Scalar> grid;
};

using PrepPlan = PrepPlanT<Real>;

namespace detail {

template <class Scalar>
ComplexVector<Scalar> unitary_dft_forward(const ComplexVector<Scalar>& x) {
  // (1/sqrt N) sum_n x[n] e^{-2 pi i nk/N}
  Eigen::FFT<Scalar> fft;
  ComplexVector<Scalar> out(x.size());
  fft.fwd(out, x);
  return out / std::sqrt(Scalar(x.size()));
}

template <class Scalar>
ComplexVector<Scalar> unitary_dft_backward(const ComplexVector<Scalar>& x) {
  // (1/sqrt N) sum_n x[n] e^{+2 pi i nk/N}
  Eigen::FFT<Scalar> fft;
  ComplexVector<Scalar> out(x.size());
  fft.inv(out, x);
  return out * std::sqrt(Scalar(x.size()));
}

template <class Scalar>
void alternate_signs(ComplexVector<Scalar>& x) {
  for (Index i = 1; i < x.size(); i += 2) x[i] = -x[i];
}

}  // namespace detail

/// Centered Fourier transform U_C-QFT = pi QFT pi, with the half-size cyclic
/// shift pi realized as QFT Z QFT^{-1} (Z = diag(1, -1, 1, -1, ...)); the
/// composition collapses to QFT Z QFT Z QFT^{-1}.
template <class Scalar>
ComplexVector<Scalar> centered_qft(const ComplexVector<Scalar>& x) {
  ComplexVector<Scalar> v = detail::unitary_dft_forward(x);
  detail::alternate_signs(v);
  v = detail::unitary_dft_backward(v);
  detail::alternate_signs(v);
  return detail::unitary_dft_backward(v);
}

/// Adjoint of centered_qft: QFT Z QFT^{-1} Z QFT^{-1}.
template <class Scalar>
ComplexVector<Scalar> centered_qft_inverse(const ComplexVector<Scalar>& x) {
  ComplexVector<Scalar> v = detail::unitary_dft_forward(x);
  detail::alternate_signs(v);
  v = detail::unitary_dft_forward(v);
  detail::alternate_signs(v);
  return detail::unitary_dft_backward(v);
}

/// Frequency-domain view of a taper in centered order (lobe of a
/// band-concentrated taper sits around bin N/2). This is the classical
/// description whose kept bins feed the preparation pipeline.
template <class Scalar>
ComplexVector<Scalar> centered_spectrum(const TaperT<Scalar>& taper) {
  return centered_qft_inverse(taper.amps);
}

/// Keeps n_params spectrum bins centered on the lobe peak, zeroes the rest,
/// renormalizes, and records the kept mass. n_params must be odd or equal to
/// the full length N (the identity case).
template <class Scalar>
PrepPlanT<Scalar> central_lobe_truncate(const TaperT<Scalar>& taper, const QpeGridT<Scalar>& grid,
                                        Index n_params) {
  const Index N = taper.size();
  if (n_params > N) throw std::invalid_argument("central_lobe_truncate: n_params exceeds N");
  if (n_params < 1 || (n_params % 2 == 0 && n_params != N))
    throw std::invalid_argument("central_lobe_truncate: n_params must be odd (or equal to N)");

  const ComplexVector<Scalar> spectrum = centered_spectrum(taper);
  Index peak = 0;
  spectrum.cwiseAbs().maxCoeff(&peak);

  PrepPlanT<Scalar> plan;
  plan.eps = Scalar(0);
  plan.n_prime = n_params;
  plan.center_offset = peak;
  plan.grid = grid;
  plan.lobe_amps.resize(n_params);
  // Packing anchor chosen so the centering permutation undoes it exactly:
  // the full-budget case pairs with the plain half-size shift.
  const Index start = n_params == N ? N / 2 : peak - (n_params - 1) / 2;
  for (Index i = 0; i < n_params; ++i)
    plan.lobe_amps[i] = spectrum[(((start + i) % N) + N) % N];
  const Scalar kept_norm = plan.lobe_amps.norm();
  plan.kept_mass = kept_norm * kept_norm;
  plan.lobe_amps /= kept_norm;
  return plan;
}

/// Bijection on {0..N-1} carrying the packed indices {0..N'-1} onto the block
/// centered at N/2 (a cyclic shift; the N' = N case shifts by N/2).
inline std::vector<Index> centering_permutation(Index N, Index n_prime) {
  if (N < 1 || (N & (N - 1)) != 0)
    throw std::invalid_argument("centering_permutation: N must be a power of two");
  if (n_prime < 1 || n_prime > N)
    throw std::invalid_argument("centering_permutation: need 1 <= N' <= N");
  const Index shift = n_prime == N ? N / 2 : (N - n_prime + 1) / 2;
  std::vector<Index> perm(static_cast<std::size_t>(N));
  for (Index j = 0; j < N; ++j) perm[static_cast<std::size_t>(j)] = (j + shift) % N;
  return perm;
}

/// Places the packed lobe amplitudes into a full-size vector through the
/// centering permutation.
template <class Scalar>
ComplexVector<Scalar> embed_lobe(const PrepPlanT<Scalar>& plan) {
  const Index N = plan.grid.N;
  const auto perm = centering_permutation(N, plan.n_prime);
  ComplexVector<Scalar> out = ComplexVector<Scalar>::Zero(N);
  for (Index i = 0; i < plan.n_prime; ++i)
    out[perm[static_cast<std::size_t>(i)]] = plan.lobe_amps[i];
  return out;
}

/// Global-phase-aligned Euclidean distance between two unit vectors.
template <class Scalar>
Scalar aligned_distance(const ComplexVector<Scalar>& a, const ComplexVector<Scalar>& b) {
  const Scalar overlap = std::abs(a.dot(b));
  return std::sqrt(std::max(Scalar(0), 2 - 2 * overlap));
}

template <class Scalar>
struct PrepResultT {
  TaperT<Scalar> taper;         // reconstructed approximate taper
  Scalar distance{};            // aligned distance to the exact taper
  Index n_prime_requested = 0;
  Index n_prime_used = 0;
  bool clamped = false;
  Scalar kept_mass{};
};

using PrepResult = PrepResultT<Real>;

/// Runs truncate -> center -> centered QFT on an explicit bin budget and
/// reports the reconstruction distance.
template <class Scalar>
PrepResultT<Scalar> prepare_approx_taper_bins(const QpeGridT<Scalar>& grid, Index n_bins) {
  const TaperT<Scalar> exact = dpss_taper(grid);
  PrepPlanT<Scalar> plan = central_lobe_truncate(exact, grid, n_bins);
  ComplexVector<Scalar> reconstructed = centered_qft(embed_lobe(plan));

  PrepResultT<Scalar> result;
  result.distance = aligned_distance(exact.amps, reconstructed);
  result.taper = make_taper(std::move(reconstructed), "dpss_approx");
  result.n_prime_requested = n_bins;
  result.n_prime_used = n_bins;
  result.kept_mass = plan.kept_mass;
  return result;
}

/// Formula-driven pipeline: the bin budget comes from n_prime(eps), clamped
/// to N (flagged) when the conservative formula exceeds the grid.
template <class Scalar>
PrepResultT<Scalar> prepare_approx_taper(const QpeGridT<Scalar>& grid, Scalar eps) {
  const Index requested = n_prime(eps);
  const Index used = std::min(requested, grid.N);
  PrepResultT<Scalar> result = prepare_approx_taper_bins(grid, used);
  result.n_prime_requested = requested;
  result.clamped = requested > grid.N;
  return result;
}

}  // namespace taperqpe
