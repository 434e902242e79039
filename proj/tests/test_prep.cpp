#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "taperqpe/eigensolve.hpp"
#include "taperqpe/prep.hpp"
#include "taperqpe/spectra.hpp"

using namespace taperqpe;

namespace {

ComplexVector<Real> random_state(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexVector<Real> v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

// alternative route: the centered transform written as shift o DFT o shift
// with plain index arithmetic
ComplexVector<Real> shifted_dft_oracle(const ComplexVector<Real>& x) {
  const Index n = x.size();
  ComplexVector<Real> shifted(n), transformed(n), out(n);
  for (Index i = 0; i < n; ++i) shifted[i] = x[(i + n / 2) % n];
  for (Index k = 0; k < n; ++k) {
    std::complex<long double> acc{};
    for (Index i = 0; i < n; ++i) {
      const std::complex<long double> amp(shifted[i].real(), shifted[i].imag());
      acc += amp * std::polar(1.0L, 2.0L * pi_v<long double> * i * k / n);
    }
    acc /= std::sqrt(static_cast<long double>(n));
    transformed[k] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  for (Index i = 0; i < n; ++i) out[i] = transformed[(i + n / 2) % n];
  return out;
}

double max_sidelobe(const Taper& taper, Index lobe_bins) {
  const Index n = taper.size();
  const Index half = (lobe_bins - 1) / 2;
  double worst = 0;
  const int oversample = 8;
  for (Index i = 0; i < oversample * n; ++i) {
    const double f = -0.5 + double(i) / double(oversample * n);
    const double distance = std::min(std::abs(f), 1.0 - std::abs(f)) * double(n);
    if (distance > double(half + 1)) worst = std::max(worst, std::abs(dtft(taper, f)));
  }
  return worst;
}

}  // namespace

TEST_CASE("parameter-count formula") {
  CHECK(n_prime(10.0) == 351);
  CHECK(n_prime(0.1) == 10997);
  CHECK_THROWS_AS(n_prime(0.0), std::domain_error);
  for (double eps : {1e-6, 1e-3, 0.05, 0.5, 2.0, 100.0}) CHECK(n_prime(eps) % 2 == 1);
}

TEST_CASE("centered transform is unitary and matches the index-arithmetic oracle") {
  const Index n = 32;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto x = random_state(n, seed);
    const auto y = centered_qft(x);
    CHECK(std::abs(y.norm() - 1.0) <= 1e-12);
    CHECK((centered_qft_inverse(y) - x).norm() <= 1e-12);
    CHECK((y - shifted_dft_oracle(x)).norm() <= 1e-12);
  }
}

TEST_CASE("centered transform of a centered single bin is a modulated flat vector") {
  const Index n = 64;
  ComplexVector<Real> bin = ComplexVector<Real>::Zero(n);
  bin[n / 2] = Complex(1, 0);
  const auto flat = centered_qft(bin);
  for (Index i = 0; i < n; ++i)
    CHECK(std::abs(flat[i]) == doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-12));
}

TEST_CASE("centering permutation") {
  CHECK_THROWS_AS(centering_permutation(Index{24}, Index{5}), std::invalid_argument);
  CHECK_THROWS_AS(centering_permutation(Index{32}, Index{33}), std::invalid_argument);

  const Index n = 64;
  for (Index n_prime : {Index{5}, Index{7}, Index{21}, Index{64}}) {
    const auto perm = centering_permutation(n, n_prime);
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (Index i = 0; i < n; ++i) CHECK(sorted[std::size_t(i)] == i);  // bijection

    // inverse composition is the identity
    std::vector<Index> inverse(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) inverse[std::size_t(perm[std::size_t(i)])] = i;
    for (Index i = 0; i < n; ++i) CHECK(perm[std::size_t(inverse[std::size_t(i)])] == i);
  }

  // the packed block lands centered on n/2
  const auto perm7 = centering_permutation(n, Index{7});
  CHECK(perm7[3] == n / 2);
  for (Index i = 0; i < 7; ++i) CHECK(perm7[std::size_t(i)] == n / 2 - 3 + i);

  // full-length case degenerates to the half-size shift
  const auto full = centering_permutation(n, n);
  for (Index i = 0; i < n; ++i) CHECK(full[std::size_t(i)] == (i + n / 2) % n);
}

TEST_CASE("central-lobe truncation") {
  const auto g = make_grid(3, 3);  // N = 64, K = 3
  const auto taper = dpss_taper(g);

  CHECK_THROWS_AS(central_lobe_truncate(taper, g, Index{65}), std::invalid_argument);
  CHECK_THROWS_AS(central_lobe_truncate(taper, g, Index{6}), std::invalid_argument);

  const auto plan = central_lobe_truncate(taper, g, Index{7});
  CHECK(plan.n_prime == 7);
  CHECK(plan.center_offset == g.N / 2);  // band-concentrated lobe sits at the center bin
  CHECK(std::abs(plan.lobe_amps.norm() - 1.0) <= 1e-12);
  CHECK(plan.kept_mass == doctest::Approx(0.9999999965315567).epsilon(1e-9));
  // the on-grid lobe mass is at least the offset-averaged concentration
  CHECK(plan.kept_mass >= average_success_form(taper, g) - 1e-9);
}

TEST_CASE("reconstruction distances shrink with the bin budget") {
  const auto g = make_grid(3, 3);
  // frozen pipeline values for the lobe sequence
  const std::vector<std::pair<Index, double>> expected = {{Index{5}, 7.909792877655962e-3},
                                                          {Index{7}, 5.889349123917984e-5},
                                                          {Index{13}, 4.6604572162965454e-5},
                                                          {Index{21}, 3.3414653722764346e-5}};
  double previous = 1e9;
  for (const auto& [bins, frozen] : expected) {
    const auto result = prepare_approx_taper_bins(g, bins);
    CHECK(result.distance == doctest::Approx(frozen).epsilon(1e-6));
    CHECK(result.distance <= previous + 1e-15);
    previous = result.distance;
  }

  // keeping every bin reconstructs the taper exactly
  CHECK(prepare_approx_taper_bins(g, g.N).distance <= 1e-12);
}

TEST_CASE("side lobes fall as the bin budget grows") {
  const auto g = make_grid(3, 3);
  double previous = 1e9;
  for (Index bins : {Index{5}, Index{7}, Index{13}, Index{21}}) {
    const auto result = prepare_approx_taper_bins(g, bins);
    const double side = max_sidelobe(result.taper, bins);
    CHECK(side < previous);
    previous = side;
  }
}

TEST_CASE("preparation distance is the same in both domains") {
  const auto g = make_grid(3, 3);
  const auto exact = dpss_taper(g);
  const auto plan = central_lobe_truncate(exact, g, Index{2 * g.K + 1});
  const auto embedded = embed_lobe(plan);
  const auto approx = centered_qft(embedded);

  const double time_distance = aligned_distance(exact.amps, approx);
  const double freq_distance = aligned_distance(centered_spectrum(exact), embedded);
  CHECK(std::abs(time_distance - freq_distance) <= 1e-12);
}

TEST_CASE("success degradation stays within the distance budget") {
  const auto g = make_grid(3, 3);
  const auto exact = dpss_taper(g);
  const auto result = prepare_approx_taper_bins(g, Index{2 * g.K + 1});

  const double s_exact = average_success(exact, g);
  const double s_approx = average_success(result.taper, g);
  const double d = result.distance;
  CHECK(s_exact - s_approx <= 2 * d + d * d);
  CHECK(s_approx >= (1 - d) * (1 - d) * s_exact - 1e-12);
}

TEST_CASE("formula-driven pipeline clamps oversized budgets") {
  const auto g = make_grid(3, 3);  // N = 64, far below the formula's budget
  const auto result = prepare_approx_taper(g, 10.0);
  CHECK(result.clamped);
  CHECK(result.n_prime_requested == 351);
  CHECK(result.n_prime_used == g.N);
  CHECK(result.distance <= 1e-12);
}
