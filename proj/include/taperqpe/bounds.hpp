#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "taperqpe/types.hpp"

namespace taperqpe {

/// Named bound evaluation with its inputs and intermediate quantities kept
/// for audit.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0;
  std::vector<std::pair<std::string, double>> terms;
};

namespace detail {

// ceil that snaps values within 1e-9 of an integer, so formulas that land
// exactly on integer boundaries are not pushed up by rounding noise.
template <class Scalar>
std::int64_t guarded_ceil(Scalar v) {
  const Scalar r = std::round(v);
  if (std::abs(v - r) < Scalar(1e-9)) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(v));
}

inline int ceil_log2(std::int64_t n) {
  if (n < 1) throw std::domain_error("ceil_log2: need n >= 1");
  if (n == 1) return 0;
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
}

}  // namespace detail

/// Eigenvalue floor for the offset-averaged kernel:
/// 1 - min{ 8 e^{-(2K-1)/((2/pi^2) ln 4N)}, 10 e^{-(2K-6)/((2/pi^2) ln(100K+75))} }.
template <class Scalar = Real>
Scalar karnik_lower_bound(Index N, Index K) {
  if (K < 0 || K > N / 2 - 1)
    throw std::domain_error("karnik_lower_bound: need 0 <= K <= N/2 - 1");
  const Scalar c = Scalar(2) / (pi_v<Scalar> * pi_v<Scalar>);
  const Scalar b1 = 8 * std::exp(-(Scalar(2 * K) - 1) / (c * std::log(Scalar(4 * N))));
  const Scalar b2 = 10 * std::exp(-(Scalar(2 * K) - 6) / (c * std::log(Scalar(100 * K + 75))));
  return 1 - std::min(b1, b2);
}

/// Boost qubits sufficient for average success >= 1 - eps, valid at any grid
/// size: ceil(log2(ceil(175 (ln(10/eps)+1)^2) + 1)) + 1.
template <class Scalar = Real>
int required_m_nonasymptotic(Scalar eps) {
  if (!(eps > 0 && eps < 1))
    throw std::domain_error("required_m_nonasymptotic: need 0 < eps < 1");
  const Scalar inner = 175 * std::pow(std::log(10 / eps) + 1, Scalar(2));
  const std::int64_t k_req = detail::guarded_ceil(inner);
  return detail::ceil_log2(k_req + 1) + 1;
}

template <class Scalar>
struct PracticalKT {
  int K = 0;
  bool below_stated_regime = false;  // eps < 1e-81
};

/// Practical half-window ceil(ln(10/eps)) + 3; outside the stated regime the
/// value is still computed but flagged.
template <class Scalar = Real>
PracticalKT<Scalar> practical_K(Scalar eps) {
  if (!(eps > 0)) throw std::domain_error("practical_K: need eps > 0");
  PracticalKT<Scalar> out;
  out.K = static_cast<int>(detail::guarded_ceil(std::log(10 / eps))) + 3;
  out.below_stated_regime = eps < Scalar(1e-81);
  return out;
}

template <class Scalar>
struct SlepianGapT {
  Scalar value{};          // 1 - lambda_k from the asymptotic expression
  Scalar simplified_k0{};  // 4 pi sqrt(NW) e^{-2 pi NW}
  Scalar alpha{};
  Scalar gamma{};
};

/// Asymptotic eigenvalue gap 1 - lambda_k of the band-concentration spectrum,
/// with alpha = 1 - cos(2 pi W) and gamma = ln(1 + 2 sqrt(alpha)/(sqrt 2 - sqrt(alpha))).
template <class Scalar = Real>
SlepianGapT<Scalar> slepian_gap(Index N, Scalar W, int k) {
  if (!(W > 0 && W < Scalar(0.5))) throw std::domain_error("slepian_gap: need 0 < W < 1/2");
  if (k < 0) throw std::domain_error("slepian_gap: need k >= 0");
  SlepianGapT<Scalar> out;
  out.alpha = 1 - std::cos(2 * pi_v<Scalar> * W);
  out.gamma = std::log(1 + 2 * std::sqrt(out.alpha) / (std::sqrt(Scalar(2)) - std::sqrt(out.alpha)));
  Scalar factorial = 1;
  for (int j = 2; j <= k; ++j) factorial *= Scalar(j);
  out.value = std::sqrt(pi_v<Scalar>) / factorial * std::pow(Scalar(2), Scalar(14 * k + 9) / 4) *
              std::pow(out.alpha, Scalar(2 * k + 1) / 4) *
              std::pow(2 - out.alpha, -(Scalar(k) + Scalar(0.5))) *
              std::pow(Scalar(N), Scalar(k) + Scalar(0.5)) * std::exp(-out.gamma * Scalar(N));
  const Scalar nw = Scalar(N) * W;
  out.simplified_k0 = 4 * pi_v<Scalar> * std::sqrt(nw) * std::exp(-2 * pi_v<Scalar> * nw);
  return out;
}

/// Boost qubits in the large-N, small-delta regime: ceil(log2(ln(1/eps))).
template <class Scalar = Real>
int required_m_asymptotic(Scalar eps) {
  if (!(eps > 0 && eps < std::exp(Scalar(-1))))
    throw std::domain_error("required_m_asymptotic: need 0 < eps < 1/e");
  return static_cast<int>(detail::guarded_ceil(std::log2(std::log(1 / eps))));
}

template <class Scalar>
struct ZhuRT {
  Scalar value{};
  Scalar log_term{};         // (4/pi^2 ln(8N) + 6) ln(16/eps)
  Scalar correction_term{};  // 2 max(-ln((pi/32)((N/(N-1))^2 - 1) eps) / ln(N/(N-1)), 0)
};

/// Eigenvalue-counting radius R(N, eps) from the periodic concentration
/// bound, with both terms recorded.
template <class Scalar = Real>
ZhuRT<Scalar> zhu_R(Index N, Scalar eps) {
  if (N < 2) throw std::domain_error("zhu_R: need N >= 2");
  if (!(eps > 0 && eps < Scalar(0.5))) throw std::domain_error("zhu_R: need 0 < eps < 1/2");
  ZhuRT<Scalar> out;
  out.log_term = (4 / (pi_v<Scalar> * pi_v<Scalar>)*std::log(Scalar(8 * N)) + 6) * std::log(16 / eps);
  const Scalar ratio = Scalar(N) / Scalar(N - 1);
  const Scalar inner = pi_v<Scalar> / 32 * (ratio * ratio - 1) * eps;
  out.correction_term = 2 * std::max(-std::log(inner) / std::log(ratio), Scalar(0));
  out.value = out.log_term + out.correction_term;
  return out;
}

template <class Scalar>
struct ZhuSearchT {
  int m = 0;
  Index N = 0;
  Scalar NW{};
  Scalar certificate{};  // dominant log term certified at the returned m
  Scalar full_R{};       // full radius, correction term included
};

/// Smallest m >= 0 with N = 2^{ell+m}, W = 2^m/N whose plateau 2 floor(NW)
/// covers the counting radius. The search certifies against the dominant log
/// term of R (its correction term grows faster than any plateau and would
/// leave the certificate unsatisfiable); the full radius is reported.
template <class Scalar = Real>
ZhuSearchT<Scalar> required_m_zhu(int ell, Scalar eps, int cap = 40) {
  if (ell < 1) throw std::domain_error("required_m_zhu: need ell >= 1");
  if (!(eps > 0 && eps < Scalar(0.5)))
    throw std::domain_error("required_m_zhu: need 0 < eps < 1/2");
  for (int m = 0; m <= cap && ell + m <= 62; ++m) {
    const Index N = Index{1} << (ell + m);
    const Scalar nw = Scalar(Index{1} << m);  // N * (2^m / N)
    const auto radius = zhu_R(N, eps);
    if (2 * std::floor(nw) >= Scalar(detail::guarded_ceil(radius.log_term)))
      return {m, N, nw, radius.log_term, radius.value};
  }
  throw std::runtime_error("required_m_zhu: search cap exceeded");
}

/// Boost qubits for the uniform-superposition taper: ceil(log2(1/(2 eps) + 1/2)).
template <class Scalar = Real>
int cleve_m(Scalar eps) {
  if (!(eps > 0 && eps < 1)) throw std::domain_error("cleve_m: need 0 < eps < 1");
  return static_cast<int>(detail::guarded_ceil(std::log2(1 / (2 * eps) + Scalar(0.5))));
}

// ---- report builders -------------------------------------------------------

inline BoundReport report_karnik(Index N, Index K) {
  BoundReport r{"karnik_lower_bound", {{"N", double(N)}, {"K", double(K)}}, karnik_lower_bound(N, K), {}};
  const double c = 2.0 / (pi_v<double> * pi_v<double>);
  r.terms.emplace_back("branch_4N", 8 * std::exp(-(2.0 * K - 1) / (c * std::log(4.0 * N))));
  r.terms.emplace_back("branch_100K", 10 * std::exp(-(2.0 * K - 6) / (c * std::log(100.0 * K + 75))));
  return r;
}

inline BoundReport report_required_m_nonasymptotic(double eps) {
  BoundReport r{"required_m_nonasymptotic", {{"eps", eps}}, double(required_m_nonasymptotic(eps)), {}};
  r.terms.emplace_back("K_required", 175 * std::pow(std::log(10 / eps) + 1, 2.0));
  return r;
}

inline BoundReport report_practical_K(double eps) {
  const auto pk = practical_K(eps);
  BoundReport r{"practical_K", {{"eps", eps}}, double(pk.K), {}};
  r.terms.emplace_back("below_stated_regime", pk.below_stated_regime ? 1.0 : 0.0);
  return r;
}

inline BoundReport report_required_m_asymptotic(double eps) {
  return {"required_m_asymptotic", {{"eps", eps}}, double(required_m_asymptotic(eps)), {}};
}

inline BoundReport report_slepian_gap(Index N, double W, int k) {
  const auto g = slepian_gap(N, W, k);
  BoundReport r{"slepian_gap", {{"N", double(N)}, {"W", W}, {"k", double(k)}}, g.value, {}};
  r.terms.emplace_back("alpha", g.alpha);
  r.terms.emplace_back("gamma", g.gamma);
  r.terms.emplace_back("simplified_k0", g.simplified_k0);
  return r;
}

inline BoundReport report_zhu_R(Index N, double eps) {
  const auto z = zhu_R(N, eps);
  BoundReport r{"zhu_R", {{"N", double(N)}, {"eps", eps}}, z.value, {}};
  r.terms.emplace_back("log_term", z.log_term);
  r.terms.emplace_back("correction_term", z.correction_term);
  return r;
}

inline BoundReport report_required_m_zhu(int ell, double eps) {
  const auto s = required_m_zhu(ell, eps);
  BoundReport r{"required_m_zhu", {{"ell", double(ell)}, {"eps", eps}}, double(s.m), {}};
  r.terms.emplace_back("N", double(s.N));
  r.terms.emplace_back("NW", s.NW);
  r.terms.emplace_back("certificate", s.certificate);
  r.terms.emplace_back("full_R", s.full_R);
  return r;
}

inline BoundReport report_cleve_m(double eps) {
  return {"cleve_m", {{"eps", eps}}, double(cleve_m(eps)), {}};
}

}  // namespace taperqpe
