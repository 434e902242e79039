#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "taperqpe/eigensolve.hpp"
#include "taperqpe/spectra.hpp"

using namespace taperqpe;

namespace {

Taper random_taper(Index n, std::uint64_t seed, bool real_only = false) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexVector<Real> amps(n);
  for (Index i = 0; i < n; ++i) amps[i] = Complex(gauss(rng), real_only ? 0.0 : gauss(rng));
  return make_taper(std::move(amps), "random");
}

}  // namespace

TEST_CASE("window probability at the named points") {
  const auto g1024 = make_grid(9, 1);  // N = 1024, K = 0
  CHECK(window_probability(tophat(g1024), 0.0, Index{0}) == doctest::Approx(1.0).epsilon(1e-12));

  // worst case of the flat taper approaches 4/pi^2
  const double worst = window_probability(tophat(g1024), 0.5 / double(g1024.N), Index{0});
  CHECK(std::abs(worst - 0.4053) <= 0.0005);
  CHECK(worst == doctest::Approx(0.40528505246093943).epsilon(1e-12));
}

TEST_CASE("window probability equals the kernel quadratic form") {
  const auto g = make_grid(3, 2);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto taper = random_taper(g.N, 1000 + trial);
    const double d = uniform(rng) / double(g.N);
    const auto kernel = ideal_kernel(g, d);
    CHECK(std::abs(window_probability(taper, d, g.K) - quadratic_form(kernel, taper)) <= 1e-10);
  }
}

TEST_CASE("success probability") {
  const auto g0 = make_grid(3, 0);  // m = 0: only the best estimate is delta-close
  CHECK(success_probability(tophat(g0), Phase(3.0 / 8), g0) == doctest::Approx(1.0).epsilon(1e-12));

  // windowed objective never exceeds the exact one
  const auto g = make_grid(3, 2);
  const auto dpss = dpss_taper(g);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const Phase theta(uniform(rng));
    const auto near = delta_of(g, theta);
    const double windowed = window_probability(dpss, near.delta, g.K);
    const double exact = success_probability(dpss, theta, g);
    CHECK(exact >= windowed - 1e-12);
    CHECK(exact <= 1.0 + 1e-10);
  }

  // the sine taper catches both straddling estimates when delta >= 1/N
  const auto g1 = make_grid(3, 1);  // N = 16, delta = 1/16 = 1/N
  const double midway = 2.5 / double(g1.N);
  CHECK(success_probability(sine_taper(g1), Phase(midway), g1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("two-nearest probability") {
  const auto g = make_grid(4, 1);  // N = 32
  const double half_step = 0.5 / double(g.N);
  CHECK(two_nearest_probability(sine_taper(g), half_step) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(two_nearest_probability(cosine_taper(g), half_step) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(two_nearest_probability(phi_shift(g, half_step), half_step) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // at Delta = 0 the second point is one grid step below
  CHECK(two_nearest_probability(tophat(g), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("delta sweep structure") {
  const auto g = make_grid(3, 2);
  const std::vector<Taper> tapers = {tophat(g), dpss_taper(g)};

  CHECK_THROWS_AS(delta_sweep(tapers, g, 1), std::invalid_argument);

  const auto half = delta_sweep(tapers, g, 11);
  REQUIRE(half.size() == 11);
  CHECK(half.front().delta == 0.0);
  CHECK(half.back().delta == 0.5 / double(g.N));
  REQUIRE(half.front().values.size() == 6);  // three functionals per taper
  CHECK(half.front().values[0].first == "tophat.nearest");
  CHECK(half.front().values[4].first == "dpss.window");

  for (const auto& rec : half)
    for (const auto& [label, value] : rec.values) {
      CHECK(value >= 0.0);
      CHECK(value <= 1.0 + 1e-10);
    }

  const auto full = delta_sweep(tapers, g, 21, SweepRange::Full);
  CHECK(full.front().delta == -0.5 / double(g.N));
  CHECK(full.back().delta == 0.5 / double(g.N));

  // threaded assembly is identical to serial
  const auto threaded = delta_sweep(tapers, g, 21, SweepRange::Full, 4);
  REQUIRE(threaded.size() == full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(threaded[i].delta == full[i].delta);
    for (std::size_t j = 0; j < full[i].values.size(); ++j)
      CHECK(threaded[i].values[j].second == full[i].values[j].second);
  }
}

TEST_CASE("flat-taper nearest-estimate curve is nonincreasing on the half range") {
  const auto g = make_grid(4, 1);  // K = 0
  const auto records = delta_sweep({tophat(g)}, g, 101);
  double previous = 2.0;
  for (const auto& rec : records) {
    const double value = rec.values[0].second;  // tophat.nearest
    CHECK(value <= previous + 1e-12);
    previous = value;
  }
}

TEST_CASE("average success: quadrature equals the eigenvalue and the quadratic form") {
  const auto g = make_grid(3, 3);
  const auto dpss = dpss_taper(g);
  const double lmax = max_eigenpair(average_kernel(g)).value;
  CHECK(std::abs(average_success(dpss, g) - lmax) <= 1e-6);

  for (const auto& taper : {tophat(g), sine_taper(g), cosine_taper(g), random_taper(g.N, 77)})
    CHECK(std::abs(average_success(taper, g) - average_success_form(taper, g)) <= 1e-6);

  CHECK(average_success(tophat(g), g) <= average_success(dpss, g));
  CHECK_THROWS_AS(average_success(dpss, g, 4), std::invalid_argument);
}

TEST_CASE("average-case optimality over the named taper family") {
  for (int m : {1, 2, 3}) {
    const auto g = make_grid(3, m);
    const double half_step = 0.5 / double(g.N);
    const double best = average_success(dpss_taper(g), g);
    for (const auto& taper : {tophat(g), sine_taper(g), cosine_taper(g), phi_shift(g, half_step),
                              phi_shift(g, -half_step)})
      CHECK(best >= average_success(taper, g) - 1e-9);
  }
}

TEST_CASE("worst case evaluation") {
  const auto g = make_grid(3, 3);
  const auto dpss = dpss_taper(g);
  const double lmax = max_eigenpair(average_kernel(g)).value;
  CHECK(worst_case_success(dpss, g) >= 1.0 - 4.0 * (1.0 - lmax));

  // cross-check against the cosine-weighted quadratic form (real taper)
  CHECK(std::abs(worst_case_success(dpss, g) - quadratic_form(worstcase_form(g), dpss)) <= 1e-10);

  // a one-sided shift taper wins at its own offset and loses at the mirror one
  const auto g1 = make_grid(3, 1);
  const double half_step = 0.5 / double(g1.N);
  const auto plus = phi_shift(g1, half_step);
  CHECK(window_probability(plus, half_step, g1.K) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(worst_case_success(plus, g1) <= 1e-10);

  // flat-taper floor at large N
  const auto g1024 = make_grid(9, 1);
  CHECK(worst_case_success(tophat(g1024), g1024) == doctest::Approx(0.40528505246093943).epsilon(1e-10));
}

TEST_CASE("reflection symmetry for real tapers") {
  const auto g = make_grid(3, 2);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uniform(0.0, 0.5);
  for (const auto& taper : {tophat(g), sine_taper(g), dpss_taper(g), random_taper(g.N, 5, true)})
    for (int trial = 0; trial < 10; ++trial) {
      const double d = uniform(rng) / double(g.N);
      CHECK(std::abs(window_probability(taper, d, g.K) - window_probability(taper, -d, g.K)) <= 1e-12);
    }
}

TEST_CASE("simulated amplitudes reproduce the transform") {
  const auto g = make_grid(3, 3);
  const auto flat = tophat(g);
  CHECK(std::abs(convolution_identity_check(flat, Phase(5.0 / double(g.N)), Index{5}, g)) <= 1e-14);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto dpss = dpss_taper(g);
  for (int trial = 0; trial < 5; ++trial) {
    const Phase theta(uniform(rng));
    for (Index k = 0; k < g.N; ++k)
      CHECK(std::abs(convolution_identity_check(dpss, theta, k, g)) <= 1e-10);
  }

  // symmetric magnitudes one step either side of the midpoint
  const auto g1 = make_grid(4, 1);
  const double half_step = 0.5 / double(g1.N);
  const SpectralInput input({{Phase(half_step), Complex(1, 0)}});
  const auto state = run_tqpe(sine_taper(g1), input, g1);
  CHECK(std::abs(std::abs(state.amplitudes(0, 0)) - std::abs(state.amplitudes(1, 0))) <= 1e-12);
}
