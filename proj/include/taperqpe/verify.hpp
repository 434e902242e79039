#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "taperqpe/eigensolve.hpp"
#include "taperqpe/kernels.hpp"
#include "taperqpe/lattice.hpp"
#include "taperqpe/prep.hpp"
#include "taperqpe/simulator.hpp"
#include "taperqpe/spectra.hpp"
#include "taperqpe/tapers.hpp"

namespace taperqpe {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline Taper random_taper(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector<Real> amps(n);
  for (Index i = 0; i < n; ++i) amps[i] = Complex(gauss(rng), gauss(rng));
  return make_taper(std::move(amps), "random");
}

inline CheckResult check(const std::string& name, double worst, double tolerance) {
  char detail[96];
  std::snprintf(detail, sizeof(detail), "max deviation %.3g (tolerance %.3g)", worst, tolerance);
  return {name, worst <= tolerance, detail};
}

}  // namespace detail

/// Cross-module invariant suite behind the verify command. Returns one result
/// per check; quick mode shrinks the grid sizes.
inline std::vector<CheckResult> run_verification(bool quick) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(20240901);
  const auto grid = quick ? make_grid(3, 2) : make_grid(4, 3);
  const int taper_trials = quick ? 10 : 30;
  const int phase_trials = quick ? 20 : 100;
  std::uniform_real_distribution<double> uniform01(0.0, 1.0);

  // Grid arithmetic: theta = k*/N + Delta (mod 1) exactly, |Delta| <= 1/2N.
  {
    double worst = 0;
    for (int t = 0; t < phase_trials; ++t) {
      const Phase theta(uniform01(rng));
      const auto near = delta_of(grid, theta);
      worst = std::max(worst, std::abs(near.delta) - 0.5 / double(grid.N));
      const double rebuilt = double(near.k_star) / double(grid.N) + near.delta;
      const double wrapped = rebuilt - std::floor(rebuilt);
      worst = std::max(worst, std::abs(wrapped - theta.value));
    }
    results.push_back(detail::check("lattice.delta_roundtrip", worst, 0.0));
  }

  const std::vector<Taper> family = {tophat(grid), sine_taper(grid), cosine_taper(grid),
                                     dpss_taper(grid), phi_shift(grid, 0.5 / double(grid.N)),
                                     phi_shift(grid, -0.5 / double(grid.N))};

  // Unit norms.
  {
    double worst = 0;
    for (const auto& t : family) worst = std::max(worst, std::abs(t.amps.norm() - 1.0));
    results.push_back(detail::check("tapers.unit_norm", worst, 1e-12));
  }

  // Parseval on the estimate grid: sum_k |dtft(theta - k/N)|^2 = 1.
  {
    double worst = 0;
    for (const auto& t : family)
      for (int trial = 0; trial < (quick ? 5 : 20); ++trial) {
        const double theta = uniform01(rng);
        double total = 0;
        for (Index k = 0; k < grid.N; ++k)
          total += std::norm(dtft(t, theta - double(k) / double(grid.N)));
        worst = std::max(worst, std::abs(total - 1.0));
      }
    results.push_back(detail::check("tapers.grid_parseval", worst, 1e-10));
  }

  // Kernels Hermitian, eigenvalues in [0, 1], trace = 2K+1.
  {
    const auto kernels = {ideal_kernel(grid, 0.3 / double(grid.N)), average_kernel(grid),
                          classical_kernel(grid.N, grid.W), worstcase_form(grid)};
    double worst_h = 0, worst_t = 0, worst_e = 0;
    for (const auto& k : kernels) {
      worst_h = std::max(worst_h, (k.mat - k.mat.adjoint()).cwiseAbs().maxCoeff());
      worst_t = std::max(worst_t, std::abs(k.mat.trace().real() - double(2 * grid.K + 1)));
      for (const auto& pair : full_spectrum(k)) {
        worst_e = std::max(worst_e, pair.value - 1.0);
        worst_e = std::max(worst_e, -pair.value);
      }
    }
    results.push_back(detail::check("kernels.hermitian", worst_h, 1e-12));
    results.push_back(detail::check("kernels.trace", worst_t, 1e-8));
    results.push_back(detail::check("kernels.eigenvalue_range", worst_e, 1e-10));
  }

  // Quadratic-form equivalence: window probability == <phi|B_Delta|phi>.
  {
    double worst = 0;
    for (int t = 0; t < taper_trials; ++t) {
      const auto taper = detail::random_taper(grid.N, rng);
      const double d = (uniform01(rng) - 0.5) / double(grid.N);
      const auto kernel = ideal_kernel(grid, d);
      worst = std::max(worst, std::abs(window_probability(taper, d, grid.K) -
                                       quadratic_form(kernel, taper)));
    }
    results.push_back(detail::check("spectra.quadratic_form", worst, 1e-10));
  }

  // Modulation carries the zero-offset eigenbasis to the shifted kernel.
  {
    const double d = 0.5 / double(grid.N);
    const auto base = full_spectrum(ideal_kernel(grid, 0.0));
    const auto shifted = ideal_kernel(grid, d);
    double worst = 0;
    for (const auto& pair : base) {
      const Taper carried = modulate({pair.vector, "eig"}, d);
      worst = std::max(worst,
                       double((shifted.mat * carried.amps - pair.value * carried.amps).norm()));
    }
    results.push_back(detail::check("kernels.modulation_covariance", worst, 1e-8));
  }

  // Average success: quadrature vs kernel quadratic form.
  {
    double worst = 0;
    for (const auto& t : family)
      worst = std::max(worst, std::abs(average_success(t, grid) - average_success_form(t, grid)));
    results.push_back(detail::check("spectra.average_quadrature", worst, 1e-6));
  }

  // Simulator amplitudes match the analytic transform.
  {
    double worst = 0;
    for (int t = 0; t < (quick ? 5 : 20); ++t) {
      const Phase theta(uniform01(rng));
      const auto taper = detail::random_taper(grid.N, rng);
      const SpectralInput input({{theta, Complex(1, 0)}});
      const auto state = run_tqpe(taper, input, grid);
      for (Index k = 0; k < grid.N; ++k) {
        const double analytic = std::abs(dtft(taper, theta.value - double(k) / double(grid.N)));
        worst = std::max(worst, std::abs(std::abs(state.amplitudes(k, 0)) - analytic));
      }
    }
    results.push_back(detail::check("simulator.dtft_oracle", worst, 1e-10));
  }

  // Centered transform is unitary and matches the index-arithmetic route.
  {
    double worst = 0;
    for (int t = 0; t < 5; ++t) {
      const auto x = detail::random_taper(grid.N, rng).amps;
      const auto y = centered_qft(x);
      worst = std::max(worst, std::abs(y.norm() - 1.0));
      const auto back = centered_qft_inverse(y);
      worst = std::max(worst, double((back - x).norm()));
    }
    results.push_back(detail::check("prep.centered_qft_unitary", worst, 1e-12));
  }

  // Preparation distance agrees across time and frequency domains. The
  // distance is sqrt(2 - 2|overlap|), so roundoff in the overlap is amplified
  // by 1/distance; the tolerance carries that factor.
  {
    const auto exact = dpss_taper(grid);
    const auto plan = central_lobe_truncate(exact, grid, Index{2 * grid.K + 1});
    const auto freq_exact = centered_spectrum(exact);
    const auto embedded = embed_lobe(plan);
    const auto approx = centered_qft(embedded);
    const double time_distance = aligned_distance(exact.amps, approx);
    const double freq_distance = aligned_distance(freq_exact, embedded);
    const double amplification = 1.0 / std::max(time_distance, 1e-12);
    results.push_back(detail::check("prep.parseval_distance",
                                    std::abs(time_distance - freq_distance),
                                    1e-12 + 64 * std::numeric_limits<double>::epsilon() * amplification));
  }

  // Classical kernel reproduces the average kernel at W = (2K+1)/(2N).
  {
    const auto a = average_kernel(grid);
    const auto c = classical_kernel(grid.N, grid.W);
    results.push_back(detail::check("kernels.classical_matches_average",
                                    (a.mat - c.mat).cwiseAbs().maxCoeff(), 1e-14));
  }

  return results;
}

}  // namespace taperqpe
