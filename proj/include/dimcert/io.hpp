// Copyright 2026 The dimcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIMCERT_IO_HPP
#define DIMCERT_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimcert/certify.hpp"
#include "dimcert/common.hpp"
#include "dimcert/counts.hpp"
#include "dimcert/ingest.hpp"
#include "dimcert/matrix.hpp"
#include "dimcert/pmatrix.hpp"
#include "dimcert/prep.hpp"
#include "dimcert/protocol.hpp"
#include "dimcert/sim.hpp"

namespace dimcert {

namespace detail {

inline std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
      cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

inline double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw input_error("bad numeric cell '" + s + "' in " + context);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Labeled probability-matrix CSV: header row/column of outcome labels,
// values at full double precision.

inline void write_prob_matrix_csv(const ProbMatrix& p, std::ostream& os) {
  os << "prep\\meas";
  for (const auto& l : p.labels) os << ',' << l;
  os << '\n';
  for (index_t r = 0; r < p.size(); ++r) {
    os << p.labels[r];
    for (index_t c = 0; c < p.size(); ++c)
      os << ',' << detail::format_full(p.values(r, c));
    os << '\n';
  }
}

inline void write_prob_matrix_csv(const ProbMatrix& p,
                                  const std::string& path) {
  std::ofstream os(path);
  if (!os) throw input_error("cannot open for writing: " + path);
  write_prob_matrix_csv(p, os);
}

inline ProbMatrix read_prob_matrix_csv(std::istream& is,
                                       const std::string& context = "csv") {
  std::string line;
  if (!std::getline(is, line))
    throw input_error("empty probability matrix file: " + context);
  auto header = detail::split_csv_line(line);
  if (header.size() < 2) throw input_error("bad header in " + context);
  ProbMatrix p;
  p.labels.assign(header.begin() + 1, header.end());
  const index_t n = p.labels.size();
  p.values = Matrix(n, n);
  index_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != n + 1)
      throw input_error("bad row width in " + context);
    if (row >= n) throw input_error("too many rows in " + context);
    for (index_t c = 0; c < n; ++c)
      p.values(row, c) = detail::parse_double(cells[c + 1], context);
    ++row;
  }
  if (row != n) throw input_error("too few rows in " + context);
  return p;
}

inline ProbMatrix read_prob_matrix_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw input_error("cannot open: " + path);
  return read_prob_matrix_csv(is, path);
}

// ---------------------------------------------------------------------------
// Count-matrix CSV. Writer emits two parallel files (<name> and
// <name>.std.csv); the reader also accepts "mean;std" cells in one file.

inline void write_count_matrix_csv(const CountMatrix& counts,
                                   const std::string& path) {
  std::ofstream os(path);
  if (!os) throw input_error("cannot open for writing: " + path);
  os << "meas\\prep";
  for (const auto& l : counts.labels) os << ',' << l;
  os << '\n';
  for (index_t r = 0; r < counts.size(); ++r) {
    os << counts.labels[r];
    for (index_t c = 0; c < counts.size(); ++c)
      os << ',' << detail::format_full(counts.mean(r, c));
    os << '\n';
  }
  const std::string std_path = path + ".std.csv";
  std::ofstream ss(std_path);
  if (!ss) throw input_error("cannot open for writing: " + std_path);
  ss << "meas\\prep";
  for (const auto& l : counts.labels) ss << ',' << l;
  ss << '\n';
  for (index_t r = 0; r < counts.size(); ++r) {
    ss << counts.labels[r];
    for (index_t c = 0; c < counts.size(); ++c)
      ss << ',' << detail::format_full(counts.std_dev(r, c));
    ss << '\n';
  }
}

inline CountMatrix read_count_matrix_csv(const std::string& path,
                                         index_t runs = 1) {
  std::ifstream is(path);
  if (!is) throw input_error("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw input_error("empty count file: " + path);
  auto header = detail::split_csv_line(line);
  if (header.size() < 2) throw input_error("bad header in " + path);

  CountMatrix counts;
  counts.labels.assign(header.begin() + 1, header.end());
  const index_t n = counts.labels.size();
  counts.mean = Matrix(n, n);
  counts.std_dev = Matrix(n, n);
  counts.runs = runs;

  index_t row = 0;
  bool inline_std = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != n + 1) throw input_error("bad row width in " + path);
    if (row >= n) throw input_error("too many rows in " + path);
    for (index_t c = 0; c < n; ++c) {
      const std::string& cell = cells[c + 1];
      const auto semi = cell.find(';');
      if (semi != std::string::npos) {
        inline_std = true;
        counts.mean(row, c) =
            detail::parse_double(cell.substr(0, semi), path);
        counts.std_dev(row, c) =
            detail::parse_double(cell.substr(semi + 1), path);
      } else {
        counts.mean(row, c) = detail::parse_double(cell, path);
      }
    }
    ++row;
  }
  if (row != n) throw input_error("too few rows in " + path);

  if (!inline_std) {
    std::ifstream ss(path + ".std.csv");
    if (ss) {
      std::getline(ss, line);  // header
      index_t r = 0;
      while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != n + 1 || r >= n)
          throw input_error("bad std file next to " + path);
        for (index_t c = 0; c < n; ++c)
          counts.std_dev(r, c) = detail::parse_double(cells[c + 1], path);
        ++r;
      }
    }
  }
  counts.validate();
  return counts;
}

// ---------------------------------------------------------------------------
// JSON documents.

inline nlohmann::json povm_to_json(const Povm& povm) {
  nlohmann::json j;
  j["dimension"] = povm.dimension;
  j["variant"] = variant_name(povm.variant);
  j["p"] = povm.elements.empty() ? 0.0 : povm.elements.front().weight;
  nlohmann::json outcomes = nlohmann::json::array();
  for (index_t b = 0; b < povm.size(); ++b) {
    const auto& el = povm.elements[b];
    nlohmann::json o;
    o["label"] = outcome_label_string(povm, b);
    o["weight"] = el.weight;
    std::vector<double> re, im;
    for (const auto& a : el.vector) {
      re.push_back(a.real());
      im.push_back(a.imag());
    }
    o["vector_re"] = re;
    o["vector_im"] = im;
    outcomes.push_back(std::move(o));
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

inline nlohmann::json states_to_json(const Povm& povm,
                                     const PreparationResult& prep) {
  nlohmann::json j;
  j["dimension"] = povm.dimension;
  j["variant"] = variant_name(povm.variant);
  j["t"] = prep.t;
  nlohmann::json states = nlohmann::json::array();
  for (const auto& st : prep.states) {
    nlohmann::json s;
    s["excluded_outcome"] = st.excluded_outcome;
    s["excluded_label"] = outcome_label_string(povm, st.excluded_outcome);
    nlohmann::json mix = nlohmann::json::array();
    for (const auto& [idx, w] : st.mixture) {
      nlohmann::json comp;
      comp["component"] = outcome_label_string(povm, idx);
      comp["component_index"] = idx;
      comp["weight"] = w;
      mix.push_back(std::move(comp));
    }
    s["mixture"] = std::move(mix);
    states.push_back(std::move(s));
  }
  j["states"] = std::move(states);
  return j;
}

inline std::vector<PreparedState> states_from_json(const nlohmann::json& j) {
  std::vector<PreparedState> states;
  for (const auto& s : j.at("states")) {
    PreparedState st;
    st.excluded_outcome = s.at("excluded_outcome").get<index_t>();
    for (const auto& comp : s.at("mixture"))
      st.mixture.emplace_back(comp.at("component_index").get<index_t>(),
                              comp.at("weight").get<double>());
    states.push_back(std::move(st));
  }
  return states;
}

inline nlohmann::json noise_model_to_json(const NoiseModel& m) {
  nlohmann::json j;
  j["crosstalk"] = m.crosstalk;
  j["dark_fraction"] = m.dark_fraction;
  j["counts_per_setting"] = m.counts_per_setting;
  j["runs"] = m.runs;
  j["seed"] = m.seed;
  j["analytic"] = m.analytic;
  j["charge_bound"] = m.charge_bound;
  return j;
}

inline nlohmann::json label_map_to_json(const LabelMap& map) {
  nlohmann::json j;
  std::vector<std::string> charges;
  for (int c : map.charges) charges.push_back(format_charge(c));
  j["map"] = charges;
  return j;
}

inline nlohmann::json report_to_json(const CertReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["d_q"] = rep.d_q;
  j["variant"] = rep.variant;
  j["spectrum"] = rep.spectrum;
  j["e_norm"] = rep.e_norm;
  j["e_norm_std"] = rep.e_norm_std;
  j["std_from_monte_carlo"] = rep.std_from_monte_carlo;
  j["d_exp"] = rep.d_exp;
  j["margins"] = rep.margins;
  nlohmann::json z = nlohmann::json::array();
  for (double v : rep.z_scores) {
    if (std::isfinite(v))
      z.push_back(v);
    else
      z.push_back(v > 0 ? "inf" : "-inf");
  }
  j["z_scores"] = std::move(z);
  return j;
}

/// Plain-text rendering mirroring the published table columns:
/// n, d_Q, d_exp, sigma_{d_exp}, ||E||_2 +/- std, sigma_{d_exp + 1}.
inline std::string report_to_table(const CertReport& rep) {
  char buf[256];
  std::string out;
  out += "  n  d_Q  d_exp  sigma_dexp      ||E||_2              sigma_next\n";
  const double sig_d =
      rep.d_exp >= 1 && rep.d_exp <= rep.spectrum.size()
          ? rep.spectrum[rep.d_exp - 1]
          : 0.0;
  const double sig_next =
      rep.d_exp < rep.spectrum.size() ? rep.spectrum[rep.d_exp] : 0.0;
  std::snprintf(buf, sizeof(buf),
                "%3zu  %3zu  %5zu  %.4e  %.4e +/- %.2e  %s\n", rep.n, rep.d_q,
                rep.d_exp, sig_d, rep.e_norm, rep.e_norm_std,
                sig_next <= 1e-12 ? "<= 1e-12"
                                  : detail::format_full(sig_next).c_str());
  out += buf;
  return out;
}

}  // namespace dimcert

#endif  // DIMCERT_IO_HPP
