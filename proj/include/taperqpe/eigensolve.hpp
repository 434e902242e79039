#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "taperqpe/kernels.hpp"
#include "taperqpe/tapers.hpp"
#include "taperqpe/types.hpp"

namespace taperqpe {

template <class Scalar>
struct EigenpairT {
  Scalar value{};
  ComplexVector<Scalar> vector;
  Scalar residual{};  // ||K v - lambda v||_2
};

using Eigenpair = EigenpairT<Real>;

/// Rotates a global phase so the largest-magnitude entry is real positive.
template <class Scalar>
void phase_fix(ComplexVector<Scalar>& v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const std::complex<Scalar> a = v[imax];
  const Scalar mag = std::abs(a);
  if (mag > Scalar(0)) v *= std::conj(a) / mag;
}

template <class Scalar>
Scalar eigen_residual(const ComplexMatrix<Scalar>& mat, const ComplexVector<Scalar>& v, Scalar lambda) {
  return (mat * v - lambda * v).norm();
}

/// Dominant eigenpair by full dense decomposition (the oracle path).
template <class Scalar>
EigenpairT<Scalar> max_eigenpair_dense(const ComplexMatrix<Scalar>& mat) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(mat);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("max_eigenpair_dense: decomposition failed");
  const Index top = mat.rows() - 1;
  EigenpairT<Scalar> pair;
  pair.value = solver.eigenvalues()[top];
  pair.vector = solver.eigenvectors().col(top);
  phase_fix(pair.vector);
  pair.residual = eigen_residual(mat, pair.vector, pair.value);
  return pair;
}

template <class Scalar>
struct IterativeOptionsT {
  Scalar tol = Scalar(1e-12);          // convergence tolerance on Rayleigh-quotient change
  Scalar residual_tol = Scalar(1e-8);  // acceptance contract on ||Kv - lambda v||
  int max_iterations = 100000;
  int block = 0;  // 0 = auto from the kernel trace (the near-1 plateau width)
  std::uint64_t seed = 0x7a9e11;
};

using IterativeOptions = IterativeOptionsT<Real>;

/// Dominant eigenpair by shifted block power iteration with Rayleigh-Ritz
/// extraction. The block spans the near-1 plateau, whose width equals the
/// kernel trace, so the iteration converges at the plateau-to-cliff gap
/// instead of the gap inside the plateau.
template <class Scalar>
EigenpairT<Scalar> max_eigenpair_iterative(const ComplexMatrix<Scalar>& mat,
                                           IterativeOptionsT<Scalar> opts = {}) {
  const Index n = mat.rows();
  Index block = opts.block;
  if (block <= 0) {
    const Scalar trace = mat.trace().real();
    block = static_cast<Index>(std::lround(static_cast<double>(trace))) + 2;
  }
  block = std::clamp<Index>(block, 2, n);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix<Scalar> x(n, block);
  for (Index j = 0; j < block; ++j)
    for (Index i = 0; i < n; ++i)
      x(i, j) = std::complex<Scalar>(Scalar(gauss(rng)), Scalar(gauss(rng)));

  // Positive spectral shift keeps the top of the shifted spectrum dominant
  // in magnitude even if the kernel has slightly negative eigenvalues.
  const Scalar shift = Scalar(1);

  EigenpairT<Scalar> pair;
  Scalar prev = std::numeric_limits<Scalar>::quiet_NaN();
  for (int it = 0; it < opts.max_iterations; ++it) {
    Eigen::HouseholderQR<ComplexMatrix<Scalar>> qr(x);
    ComplexMatrix<Scalar> q = qr.householderQ() * ComplexMatrix<Scalar>::Identity(n, block);

    const ComplexMatrix<Scalar> hq = mat * q;
    ComplexMatrix<Scalar> small = q.adjoint() * hq;
    small = (small + small.adjoint()) / Scalar(2);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> ritz(small);
    const Index top = block - 1;

    pair.value = ritz.eigenvalues()[top];
    pair.vector = q * ritz.eigenvectors().col(top);
    pair.vector /= pair.vector.norm();

    if (std::abs(pair.value - prev) <= opts.tol) {
      pair.residual = eigen_residual(mat, pair.vector, pair.value);
      if (pair.residual <= opts.residual_tol) {
        phase_fix(pair.vector);
        return pair;
      }
    }
    prev = pair.value;
    x = hq + shift * q;  // (K + shift I) Q
  }
  pair.residual = eigen_residual(mat, pair.vector, pair.value);
  throw std::runtime_error("max_eigenpair_iterative: no convergence after iteration cap; residual = " +
                           std::to_string(static_cast<double>(pair.residual)));
}

inline constexpr Index kDenseSolveCap = 4096;

/// Dominant eigenpair of a kernel: dense decomposition up to the size cap,
/// block iteration beyond it.
template <class Scalar>
EigenpairT<Scalar> max_eigenpair(const KernelT<Scalar>& kernel) {
  if (kernel.mat.rows() <= kDenseSolveCap) return max_eigenpair_dense(kernel.mat);
  return max_eigenpair_iterative(kernel.mat);
}

/// All eigenpairs in descending eigenvalue order, each with its residual.
template <class Scalar>
std::vector<EigenpairT<Scalar>> full_spectrum(const KernelT<Scalar>& kernel) {
  const Index n = kernel.mat.rows();
  if (n > kDenseSolveCap)
    throw std::invalid_argument("full_spectrum: size cap " + std::to_string(kDenseSolveCap) + " exceeded");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(kernel.mat);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("full_spectrum: decomposition failed");
  std::vector<EigenpairT<Scalar>> pairs(n);
  for (Index i = 0; i < n; ++i) {
    EigenpairT<Scalar>& p = pairs[n - 1 - i];
    p.value = solver.eigenvalues()[i];
    p.vector = solver.eigenvectors().col(i);
    phase_fix(p.vector);
    p.residual = eigen_residual(kernel.mat, p.vector, p.value);
  }
  return pairs;
}

/// The DPSS taper: top eigenvector of the offset-averaged kernel.
template <class Scalar>
TaperT<Scalar> dpss_taper(const QpeGridT<Scalar>& grid) {
  auto pair = max_eigenpair(average_kernel(grid));
  return {std::move(pair.vector), "dpss"};
}

}  // namespace taperqpe
