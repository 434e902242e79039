#pragma once

#include <cmath>
#include <stdexcept>

#include "taperqpe/lattice.hpp"
#include "taperqpe/tapers.hpp"
#include "taperqpe/types.hpp"

namespace taperqpe {

enum class KernelKind { IdealDelta, Average, Classical, WorstCaseForm };

/// Dense Hermitian realization of one of the concentration operators whose
/// top eigenvector is the optimal taper for the matching objective.
template <class Scalar>
struct KernelT {
  ComplexMatrix<Scalar> mat;
  KernelKind kind{};
  Index K = 0;       // half-window (IdealDelta/Average/WorstCaseForm)
  Scalar delta{};    // offset parameter (IdealDelta)
  Scalar W{};        // bandwidth fraction (Classical)
};

using Kernel = KernelT<Real>;

/// Dirichlet ratio D(x) = sin(pi x (2K+1)/N) / sin(pi x / N) with the
/// removable singularity D(0) = 2K+1 filled in analytically.
template <class Scalar>
Scalar dirichlet_ratio(Index x, Index N, Index K) {
  if (x % N == 0) return Scalar(2 * K + 1);
  return std::sin(pi_v<Scalar> * Scalar(x) * Scalar(2 * K + 1) / Scalar(N)) /
         std::sin(pi_v<Scalar> * Scalar(x) / Scalar(N));
}

/// Window kernel at fixed offset: B_Delta[m,n] = (1/N) e^{2 pi i Delta (n-m)} D(m-n).
/// <phi|B_Delta|phi> is the probability of landing within K estimates of the
/// best one when the true phase sits at offset Delta.
template <class Scalar>
KernelT<Scalar> ideal_kernel(const QpeGridT<Scalar>& grid, Scalar delta) {
  if (std::abs(delta) > Scalar(1) / Scalar(2 * grid.N) + Scalar(1e-15))
    throw std::invalid_argument("ideal_kernel: |Delta| must be <= 1/(2N)");
  const Index N = grid.N;
  KernelT<Scalar> k{ComplexMatrix<Scalar>(N, N), KernelKind::IdealDelta, grid.K, delta, grid.W};
  for (Index m = 0; m < N; ++m)
    for (Index n = 0; n < N; ++n) {
      const Scalar d = dirichlet_ratio<Scalar>(m - n, N, grid.K) / Scalar(N);
      k.mat(m, n) = unit_phasor(2 * pi_v<Scalar> * delta * Scalar(n - m)) * d;
    }
  return k;
}

/// Offset-averaged kernel: C[m,n] = sin(pi (m-n)(2K+1)/N) / (pi (m-n)),
/// diagonal (2K+1)/N. Its eigenvectors are the DPSSs.
template <class Scalar>
KernelT<Scalar> average_kernel(const QpeGridT<Scalar>& grid) {
  const Index N = grid.N;
  KernelT<Scalar> k{ComplexMatrix<Scalar>(N, N), KernelKind::Average, grid.K, Scalar(0), grid.W};
  for (Index m = 0; m < N; ++m)
    for (Index n = 0; n < N; ++n) {
      const Index x = m - n;
      const Scalar v = x == 0
                           ? Scalar(2 * grid.K + 1) / Scalar(N)
                           : std::sin(pi_v<Scalar> * Scalar(x) * Scalar(2 * grid.K + 1) / Scalar(N)) /
                                 (pi_v<Scalar> * Scalar(x));
      k.mat(m, n) = std::complex<Scalar>(v, 0);
    }
  return k;
}

/// Finite section of the classical time- and band-limiting operator:
/// [T_N B_W T_N][l,n] = sin(2 pi W (l-n)) / (pi (l-n)), diagonal 2W.
/// At W = (2K+1)/(2N) this reproduces the average kernel entry for entry.
template <class Scalar>
KernelT<Scalar> classical_kernel(Index N, Scalar W) {
  if (!(W > Scalar(0) && W < Scalar(0.5)))
    throw std::invalid_argument("classical_kernel: need 0 < W < 1/2");
  KernelT<Scalar> k{ComplexMatrix<Scalar>(N, N), KernelKind::Classical, 0, Scalar(0), W};
  for (Index l = 0; l < N; ++l)
    for (Index n = 0; n < N; ++n) {
      const Index x = l - n;
      const Scalar v = x == 0 ? 2 * W
                              : std::sin(2 * pi_v<Scalar> * W * Scalar(x)) / (pi_v<Scalar> * Scalar(x));
      k.mat(l, n) = std::complex<Scalar>(v, 0);
    }
  return k;
}

/// Cosine-weighted quadratic form evaluated by the worst-case analysis:
/// (1/N) cos(pi (m-n)/N) D(m-n). Equal to the entrywise real part of the
/// offset kernel at Delta = 1/(2N).
template <class Scalar>
KernelT<Scalar> worstcase_form(const QpeGridT<Scalar>& grid) {
  const Index N = grid.N;
  KernelT<Scalar> k{ComplexMatrix<Scalar>(N, N), KernelKind::WorstCaseForm, grid.K, Scalar(0), grid.W};
  for (Index m = 0; m < N; ++m)
    for (Index n = 0; n < N; ++n) {
      const Scalar v = std::cos(pi_v<Scalar> * Scalar(m - n) / Scalar(N)) *
                       dirichlet_ratio<Scalar>(m - n, N, grid.K) / Scalar(N);
      k.mat(m, n) = std::complex<Scalar>(v, 0);
    }
  return k;
}

/// Real quadratic form <phi|M|phi> of a Hermitian kernel.
template <class Scalar>
Scalar quadratic_form(const KernelT<Scalar>& kernel, const TaperT<Scalar>& taper) {
  return (taper.amps.adjoint() * kernel.mat * taper.amps)(0, 0).real();
}

}  // namespace taperqpe
