#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "taperqpe/bounds.hpp"
#include "taperqpe/kernels.hpp"
#include "taperqpe/spectra.hpp"
#include "taperqpe/tapers.hpp"

namespace taperqpe {

using json = nlohmann::json;

/// Full-precision decimal rendering (17 significant digits).
inline std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline json taper_to_json(const Taper& taper) {
  json j;
  j["label"] = taper.label;
  j["N"] = taper.size();
  std::vector<double> re(taper.size()), im(taper.size());
  for (Index n = 0; n < taper.size(); ++n) {
    re[n] = taper.amps[n].real();
    im[n] = taper.amps[n].imag();
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline Taper taper_from_json(const json& j) {
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size() || re.size() != j.at("N").get<std::size_t>())
    throw std::invalid_argument("taper_from_json: inconsistent lengths");
  ComplexVector<Real> amps(static_cast<Index>(re.size()));
  for (Index n = 0; n < amps.size(); ++n) amps[n] = {re[n], im[n]};
  return make_taper(std::move(amps), j.at("label").get<std::string>());
}

inline json bound_report_to_json(const BoundReport& report) {
  json j;
  j["name"] = report.name;
  j["value"] = report.value;
  json in = json::object();
  for (const auto& [k, v] : report.inputs) in[k] = v;
  j["inputs"] = in;
  json terms = json::object();
  for (const auto& [k, v] : report.terms) terms[k] = v;
  j["formula_terms"] = terms;
  return j;
}

/// CSV rows "Delta,label1,label2,...", 17 significant digits.
inline std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  if (records.empty()) return "Delta\n";
  std::string out = "Delta";
  for (const auto& [label, value] : records.front().values) out += "," + label;
  out += "\n";
  for (const auto& rec : records) {
    out += format_full(rec.delta);
    for (const auto& [label, value] : rec.values) out += "," + format_full(value);
    out += "\n";
  }
  return out;
}

/// Generic CSV table writer: header names plus uniform-length columns.
inline std::string columns_to_csv(const std::vector<std::string>& header,
                                  const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw std::invalid_argument("columns_to_csv: header/column mismatch");
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
  out += "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw std::invalid_argument("columns_to_csv: ragged columns");
      out += (c ? "," : "") + format_full(columns[c][r]);
    }
    out += "\n";
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

/// Debug dump: row-major little-endian f64 pairs (re, im). Not a stable
/// interchange format.
inline void dump_kernel_binary(const Kernel& kernel, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (Index r = 0; r < kernel.mat.rows(); ++r)
    for (Index c = 0; c < kernel.mat.cols(); ++c) {
      const double re = kernel.mat(r, c).real();
      const double im = kernel.mat(r, c).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof(re));
      out.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace taperqpe
