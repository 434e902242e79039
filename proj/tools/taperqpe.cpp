// Command-line front end: taper design, Delta sweeps, exact circuit
// simulation, bound tables, approximate state preparation, and the
// cross-module verification suite. Emits plot-ready CSV/JSON.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "taperqpe/bounds.hpp"
#include "taperqpe/eigensolve.hpp"
#include "taperqpe/io.hpp"
#include "taperqpe/kernels.hpp"
#include "taperqpe/lattice.hpp"
#include "taperqpe/prep.hpp"
#include "taperqpe/simulator.hpp"
#include "taperqpe/spectra.hpp"
#include "taperqpe/tapers.hpp"
#include "taperqpe/verify.hpp"

namespace {

using namespace taperqpe;

int log_level() {
  const char* env = std::getenv("TAPERQPE_LOG");
  if (!env) return 0;
  const std::string v(env);
  if (v == "debug") return 2;
  if (v == "info") return 1;
  return 0;
}

void log_info(const std::string& message) {
  if (log_level() >= 1) std::cerr << "taperqpe: " << message << "\n";
}

Taper named_taper(const std::string& label, const QpeGrid& grid) {
  if (label == "tophat") return tophat(grid);
  if (label == "sine") return sine_taper(grid);
  if (label == "cosine") return cosine_taper(grid);
  if (label == "dpss") return dpss_taper(grid);
  if (label == "phi_plus") return phi_shift(grid, 0.5 / double(grid.N));
  if (label == "phi_minus") return phi_shift(grid, -0.5 / double(grid.N));
  throw std::invalid_argument("unknown taper label: " + label);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
    log_info("wrote " + out_path);
  }
}

std::string sibling_path(const std::string& base, const std::string& tag) {
  if (base.empty()) return base;
  const auto dot = base.rfind('.');
  if (dot == std::string::npos || base.find('/', dot) != std::string::npos) return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

struct Options {
  int ell = 3;
  int m = 3;
  long long K = -1;
  std::vector<std::string> tapers;
  double eps = 0.1;
  bool eps_given = false;
  std::vector<double> thetas;
  int points = 201;
  std::string range = "half";
  std::string out;
  std::string format;  // per-command default applied when empty
  int threads = 1;
  unsigned long long seed = 0;
  long long shots = 0;
  bool quick = false;
};

std::string format_or(const Options& opt, const char* fallback) {
  if (opt.format.empty()) return fallback;
  if (opt.format != "csv" && opt.format != "json")
    throw std::invalid_argument("--format must be csv or json");
  return opt.format;
}

void add_grid_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--ell", opt.ell, "precision qubits (>= 1)");
  cmd->add_option("--m", opt.m, "boost qubits (>= 0)");
  cmd->add_option("--K", opt.K, "half-window override (default 2^{m-1}-1 for m >= 2, else 0)");
}

int cmd_design(const Options& opt) {
  const auto grid = make_grid(opt.ell, opt.m, opt.K);
  const auto labels = opt.tapers.empty() ? std::vector<std::string>{"tophat"} : opt.tapers;
  std::vector<Taper> tapers;
  for (const auto& label : labels) tapers.push_back(named_taper(label, grid));

  if (format_or(opt, "json") == "json") {
    json j = json::array();
    for (const auto& t : tapers) j.push_back(taper_to_json(t));
    emit(opt.out, j.dump(2) + "\n");
    return 0;
  }

  std::vector<std::string> amp_header = {"n"};
  std::vector<std::vector<double>> amp_cols(1);
  for (Index n = 0; n < grid.N; ++n) amp_cols[0].push_back(double(n));
  for (const auto& t : tapers) {
    amp_header.push_back(t.label);
    std::vector<double> col(grid.N);
    for (Index n = 0; n < grid.N; ++n) col[n] = std::abs(t.amps[n]);
    amp_cols.push_back(std::move(col));
  }
  emit(opt.out, columns_to_csv(amp_header, amp_cols));

  const int samples = std::max(opt.points, 2);
  std::vector<std::string> dtft_header = {"f"};
  std::vector<std::vector<double>> dtft_cols(1);
  for (int i = 0; i < samples; ++i)
    dtft_cols[0].push_back(-0.5 + double(i) / double(samples));
  for (const auto& t : tapers) {
    dtft_header.push_back(t.label);
    std::vector<double> col(samples);
    for (int i = 0; i < samples; ++i) col[i] = std::abs(dtft(t, dtft_cols[0][i]));
    dtft_cols.push_back(std::move(col));
  }
  emit(sibling_path(opt.out, ".dtft"), columns_to_csv(dtft_header, dtft_cols));
  return 0;
}

int cmd_sweep(const Options& opt) {
  const auto grid = make_grid(opt.ell, opt.m, opt.K);
  const auto labels =
      opt.tapers.empty() ? std::vector<std::string>{"tophat", "sine", "dpss"} : opt.tapers;
  std::vector<Taper> tapers;
  for (const auto& label : labels) tapers.push_back(named_taper(label, grid));

  const SweepRange range = opt.range == "full" ? SweepRange::Full : SweepRange::Half;
  if (opt.range != "full" && opt.range != "half")
    throw std::invalid_argument("sweep: --range must be half or full");
  const auto records = delta_sweep(tapers, grid, opt.points, range, opt.threads);

  if (format_or(opt, "csv") == "json") {
    json j = json::array();
    for (const auto& rec : records) {
      json row;
      row["Delta"] = rec.delta;
      for (const auto& [label, value] : rec.values) row[label] = value;
      j.push_back(row);
    }
    emit(opt.out, j.dump(2) + "\n");
  } else {
    emit(opt.out, sweep_to_csv(records));
  }
  return 0;
}

int cmd_simulate(const Options& opt) {
  const auto grid = make_grid(opt.ell, opt.m, opt.K);
  const std::string label = opt.tapers.empty() ? "dpss" : opt.tapers.front();
  const Taper taper = named_taper(label, grid);

  std::vector<double> thetas = opt.thetas.empty() ? std::vector<double>{0.0} : opt.thetas;
  std::vector<std::pair<Phase, Complex>> parts;
  const double weight = 1.0 / std::sqrt(double(thetas.size()));
  for (double theta : thetas) parts.emplace_back(Phase(theta), Complex(weight, 0));
  const SpectralInput input(parts);

  const auto state = run_tqpe(taper, input, grid);
  const auto distribution = readout_distribution(state);

  json j;
  j["grid"] = {{"ell", grid.ell}, {"m", grid.m}, {"K", grid.K}, {"N", grid.N}};
  j["taper"] = label;
  j["theta"] = thetas;
  j["distribution"] = std::vector<double>(distribution.data(), distribution.data() + grid.N);
  j["coherent_success"] = coherent_success(state, input, grid);
  if (opt.shots > 0) {
    j["shots"] = {{"count", opt.shots},
                  {"seed", opt.seed},
                  {"histogram", sample_readout(state, opt.shots, opt.seed)}};
  }
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

int cmd_bounds(const Options& opt) {
  const auto grid = make_grid(opt.ell, opt.m, opt.K);
  std::vector<BoundReport> reports;
  reports.push_back(report_cleve_m(opt.eps));
  reports.push_back(report_required_m_nonasymptotic(opt.eps));
  if (opt.eps < std::exp(-1.0)) reports.push_back(report_required_m_asymptotic(opt.eps));
  reports.push_back(report_practical_K(opt.eps));
  reports.push_back({"n_prime", {{"eps", opt.eps}}, double(n_prime(opt.eps)), {}});
  if (opt.eps < 0.5) {
    reports.push_back(report_required_m_zhu(opt.ell, opt.eps));
    reports.push_back(report_zhu_R(grid.N, opt.eps));
  }
  if (grid.K <= grid.N / 2 - 1) reports.push_back(report_karnik(grid.N, grid.K));
  reports.push_back(report_slepian_gap(grid.N, grid.W, 0));

  json j = json::array();
  for (const auto& r : reports) j.push_back(bound_report_to_json(r));
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

int cmd_prep(const Options& opt) {
  const auto grid = make_grid(opt.ell, opt.m, opt.K);
  const auto exact = dpss_taper(grid);

  PrepResult result;
  if (opt.eps_given) {
    result = prepare_approx_taper(grid, opt.eps);
  } else {
    result = prepare_approx_taper_bins(grid, Index{2 * grid.K + 1});
  }

  if (format_or(opt, "json") == "csv") {
    const auto spectrum = centered_spectrum(exact);
    const auto truncated = centered_spectrum(result.taper);
    std::vector<std::vector<double>> cols(3, std::vector<double>(grid.N));
    for (Index i = 0; i < grid.N; ++i) {
      cols[0][i] = double(i);
      cols[1][i] = std::abs(spectrum[i]);
      cols[2][i] = std::abs(truncated[i]);
    }
    emit(opt.out, columns_to_csv({"bin", "abs_exact", "abs_approx"}, cols));
    return 0;
  }

  json j;
  j["eps"] = opt.eps_given ? opt.eps : 0.0;
  j["N"] = grid.N;
  j["N_prime"] = result.n_prime_used;
  j["N_prime_requested"] = result.n_prime_requested;
  j["clamped"] = result.clamped;
  j["distance"] = result.distance;
  j["kept_mass"] = result.kept_mass;
  j["success_exact"] = average_success(exact, grid);
  j["success_approx"] = average_success(result.taper, grid);
  emit(opt.out, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const Options& opt) {
  const auto results = run_verification(opt.quick);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[ok]   " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tapered quantum phase estimation: taper design, simulation, bounds"};
  app.require_subcommand(1);
  Options opt;

  auto* design = app.add_subcommand("design", "emit taper amplitudes and transform samples");
  add_grid_flags(design, opt);
  design->add_option("--taper", opt.tapers, "taper label (repeatable)");
  design->add_option("--points", opt.points, "transform sample count");
  design->add_option("--out", opt.out, "output path (stdout when omitted)");
  design->add_option("--format", opt.format, "csv or json (default json)");

  auto* sweep = app.add_subcommand("sweep", "sweep success probabilities over Delta");
  add_grid_flags(sweep, opt);
  sweep->add_option("--taper", opt.tapers, "taper label (repeatable)");
  sweep->add_option("--points", opt.points, "number of Delta points");
  sweep->add_option("--range", opt.range, "half ([0, 1/2N]) or full ([-1/2N, 1/2N])");
  sweep->add_option("--threads", opt.threads, "worker threads");
  sweep->add_option("--out", opt.out, "output path (stdout when omitted)");
  sweep->add_option("--format", opt.format, "csv or json (default csv)");

  auto* simulate = app.add_subcommand("simulate", "run the circuit on given eigenphases");
  add_grid_flags(simulate, opt);
  simulate->add_option("--taper", opt.tapers, "taper label");
  simulate->add_option("--theta", opt.thetas, "eigenphase in [0,1) (repeatable; uniform weights)");
  simulate->add_option("--seed", opt.seed, "shot-sampling seed");
  simulate->add_option("--shots", opt.shots, "sampled measurement shots (0 = none)");
  simulate->add_option("--out", opt.out, "output path (stdout when omitted)");

  auto* bounds = app.add_subcommand("bounds", "emit bound and qubit-count reports");
  add_grid_flags(bounds, opt);
  bounds->add_option("--eps", opt.eps, "target failure probability");
  bounds->add_option("--out", opt.out, "output path (stdout when omitted)");

  auto* prep = app.add_subcommand("prep", "approximate taper preparation report");
  add_grid_flags(prep, opt);
  prep->add_option("--eps", opt.eps, "target failure probability (omit for the 2K+1-bin route)");
  prep->add_option("--out", opt.out, "output path (stdout when omitted)");
  prep->add_option("--format", opt.format, "json or csv (default json)");

  auto* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
  verify->add_flag("--quick", opt.quick, "smaller grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  opt.eps_given = prep->count("--eps") > 0;

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (design->parsed()) code = cmd_design(opt);
    else if (sweep->parsed()) code = cmd_sweep(opt);
    else if (simulate->parsed()) code = cmd_simulate(opt);
    else if (bounds->parsed()) code = cmd_bounds(opt);
    else if (prep->parsed()) code = cmd_prep(opt);
    else if (verify->parsed()) code = cmd_verify(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (log_level() >= 2) {
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cerr << "taperqpe: done in " << elapsed.count() << " ms\n";
  }
  return code;
}
