#pragma once

#include "tomobell/bell.hpp"
#include "tomobell/portrait.hpp"
#include "tomobell/quantum.hpp"
#include "tomobell/search.hpp"

#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tomobell {

/// Raised when a file cannot be read or does not match the schema (as opposed
/// to parsing fine but violating a physical invariant).
struct FileFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateFile {
  std::vector<int> dims;  // [d] or [d_A, d_B]
  DensityMatrix state;

  std::pair<int, int> bipartite_dims() const {
    if (dims.size() != 2)
      throw std::invalid_argument("state file does not declare two subsystems");
    return {dims[0], dims[1]};
  }
};

/// Schema: { "dims": [dA, dB] or [d], "entries": [[[re, im], ...], ...] }.
/// Small anti-Hermitian round-off is symmetrized away; a correction above
/// 1e-9 is reported on stderr.
inline StateFile parse_state(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("entries"))
    throw FileFormatError("state file: expected object with dims and entries");
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  if (dims.empty() || dims.size() > 2)
    throw FileFormatError("state file: dims must have 1 or 2 entries");
  int d = 1;
  for (int x : dims) {
    if (x < 2) throw FileFormatError("state file: dims entries must be >= 2");
    d *= x;
  }
  const auto& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != d)
    throw FileFormatError("state file: entries must be a " + std::to_string(d) +
                          "-row matrix");
  Eigen::MatrixXcd m(d, d);
  for (int r = 0; r < d; ++r) {
    const auto& row = rows.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw FileFormatError("state file: row " + std::to_string(r) +
                            " has wrong length");
    for (int c = 0; c < d; ++c) {
      const auto& cell = row.at(c);
      if (!cell.is_array() || cell.size() != 2)
        throw FileFormatError("state file: entries must be [re, im] pairs");
      m(r, c) = std::complex<double>(cell.at(0).get<double>(),
                                     cell.at(1).get<double>());
    }
  }
  const double skew = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
  if (skew > 1e-9)
    std::cerr << "warning: symmetrized non-Hermitian input (max correction "
              << skew << ")\n";
  m = 0.5 * (m + m.adjoint().eval());
  return StateFile{std::move(dims), DensityMatrix{std::move(m)}};
}

inline StateFile load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open state file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError("state file is not valid JSON: " +
                          std::string(e.what()));
  }
  return parse_state(j);
}

inline nlohmann::json to_json(const StateFile& sf) {
  nlohmann::json rows = nlohmann::json::array();
  const auto& m = sf.state.values();
  for (int r = 0; r < sf.state.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < sf.state.dim(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dims", sf.dims}, {"entries", std::move(rows)}};
}

inline nlohmann::json to_json(const Direction& d) {
  return {{"theta", d.theta}, {"phi", d.phi}};
}

inline nlohmann::json to_json(const DirectionQuad& q) {
  return {to_json(q.a), to_json(q.b), to_json(q.c), to_json(q.d)};
}

inline nlohmann::json to_json(const ProbVector& p) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < p.size(); ++i) out.push_back(p[i]);
  return out;
}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json to_json(const BellReport& r) {
  nlohmann::json j{{"value", r.value},
                   {"verdict", to_string(r.verdict)},
                   {"angles", to_json(r.angles)},
                   {"matrix", matrix_to_json(r.matrix.matrix.values())}};
  if (r.near_threshold) j["near_threshold"] = true;
  return j;
}

inline nlohmann::json to_json(const OutcomeSplit& s) {
  return nlohmann::json(s.first_bin);
}

inline nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [it, v] : r.trace) trace.push_back({{"iteration", it}, {"value", v}});
  return {{"best_value", r.best_value},
          {"best_angles", to_json(r.best_angles)},
          {"split_a", to_json(r.split_a)},
          {"split_b", to_json(r.split_b)},
          {"evaluations", r.evaluations},
          {"trace", std::move(trace)}};
}

inline nlohmann::json to_json(const SemigroupCheckReport& r) {
  nlohmann::json singles = nlohmann::json::array();
  for (const auto& s : r.singles) singles.push_back(to_json(s));
  nlohmann::json products = nlohmann::json::array();
  for (const auto& p : r.products)
    products.push_back({{"i", p.i},
                        {"j", p.j},
                        {"value", p.value},
                        {"verdict", to_string(p.verdict)}});
  return {{"singles", std::move(singles)},
          {"products", std::move(products)},
          {"verdict", to_string(r.overall)}};
}

}  // namespace tomobell
