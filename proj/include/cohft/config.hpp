#ifndef COHFT_CONFIG_HPP
#define COHFT_CONFIG_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "givental.hpp"

// Line format, one entry per line, '#' starts a comment, indices 1-based:
//   dim: d
//   eta: row | row | ...
//   product i j: coordinates of b_i * b_j
//   unit: coordinates
//   weights: theta_1 ... theta_d            (optional, with basis)
//   basis: row | row | ...                  (columns are the normalized idempotents)
//   degree: D
//   phi j: phi_j(b_1) ... phi_j(b_d)        (omitted when coherent: derived from R)
//   R k: row | row | ...                    (missing orders are zero)
//   coherent: true | false
namespace cohft {

class ConfigError : public Error {
 public:
  ConfigError(int line, std::string field, const std::string& message)
      : Error(location(line, field) + message), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string location(int line, const std::string& field) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out;
  }
  int line_;
  std::string field_;
};

namespace detail {

struct ConfigLine {
  int number;
  std::string key;
  std::vector<int> indices;
  std::string value;
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline Vec parse_vec(const ConfigLine& l, const std::string& text, std::size_t expected) {
  std::istringstream in(text);
  std::string tok;
  Vec out;
  while (in >> tok) {
    auto r = parse_rational(tok);
    if (!r) throw ConfigError(l.number, l.key, "not an exact rational: '" + tok + "'");
    out.push_back(*r);
  }
  if (expected && out.size() != expected)
    throw ConfigError(l.number, l.key, "expected " + std::to_string(expected) + " entries, got " + std::to_string(out.size()));
  return out;
}

inline Matrix parse_matrix(const ConfigLine& l, std::size_t d) {
  std::vector<Vec> rows;
  std::string row;
  std::istringstream in(l.value);
  while (std::getline(in, row, '|')) rows.push_back(parse_vec(l, row, d));
  if (rows.size() != d) throw ConfigError(l.number, l.key, "expected " + std::to_string(d) + " rows");
  return Matrix::from_rows(rows);
}

inline std::string render_matrix(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += " | ";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + render(m(i, j));
  }
  return out;
}

inline std::string render_plain(const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + render(v[i]);
  return out;
}

}  // namespace detail

inline std::vector<detail::ConfigLine> tokenize_config(const std::string& text) {
  std::vector<detail::ConfigLine> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ConfigError(number, "", "expected 'key: value'");
    std::istringstream head(line.substr(0, colon));
    detail::ConfigLine l{number, "", {}, detail::trim(line.substr(colon + 1))};
    head >> l.key;
    std::string idx;
    while (head >> idx) {
      try {
        std::size_t used = 0;
        int v = std::stoi(idx, &used);
        if (used != idx.size()) throw std::invalid_argument(idx);
        l.indices.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError(number, l.key, "bad index '" + idx + "'");
      }
    }
    out.push_back(l);
  }
  return out;
}

inline CohFTSpec parse_config(const std::string& text) {
  auto lines = tokenize_config(text);
  const detail::ConfigLine* dim_line = nullptr;
  for (const auto& l : lines)
    if (l.key == "dim") dim_line = &l;
  if (!dim_line) throw ConfigError(0, "dim", "missing");
  std::size_t d = 0;
  {
    Vec v = detail::parse_vec(*dim_line, dim_line->value, 1);
    if (v[0] < 1 || v[0].get_den() != 1) throw ConfigError(dim_line->number, "dim", "must be a positive integer");
    d = v[0].get_num().get_ui();
  }
  std::optional<Matrix> eta, basis;
  std::optional<Vec> unit, weights;
  std::vector<std::vector<std::optional<Vec>>> products(d, std::vector<std::optional<Vec>>(d));
  std::map<int, std::pair<int, Vec>> phi;
  std::map<int, std::pair<int, Matrix>> rk;
  int degree = -1, degree_line = 0;
  std::optional<bool> coherent;

  auto want_indices = [](const detail::ConfigLine& l, std::size_t count) {
    if (l.indices.size() != count)
      throw ConfigError(l.number, l.key, "expected " + std::to_string(count) + " index argument(s)");
  };
  auto in_range = [](const detail::ConfigLine& l, int i, int hi) {
    if (i < 1 || i > hi) throw ConfigError(l.number, l.key, "index " + std::to_string(i) + " out of range");
  };

  for (const auto& l : lines) {
    if (l.key == "dim") {
      continue;
    } else if (l.key == "eta") {
      want_indices(l, 0);
      eta = detail::parse_matrix(l, d);
    } else if (l.key == "product") {
      want_indices(l, 2);
      in_range(l, l.indices[0], static_cast<int>(d));
      in_range(l, l.indices[1], static_cast<int>(d));
      products[l.indices[0] - 1][l.indices[1] - 1] = detail::parse_vec(l, l.value, d);
    } else if (l.key == "unit") {
      want_indices(l, 0);
      unit = detail::parse_vec(l, l.value, d);
    } else if (l.key == "weights") {
      want_indices(l, 0);
      weights = detail::parse_vec(l, l.value, d);
    } else if (l.key == "basis") {
      want_indices(l, 0);
      basis = detail::parse_matrix(l, d);
    } else if (l.key == "degree") {
      want_indices(l, 0);
      Vec v = detail::parse_vec(l, l.value, 1);
      if (v[0] < 1 || v[0].get_den() != 1 || v[0] > 64) throw ConfigError(l.number, l.key, "must be an integer in 1..64");
      degree = static_cast<int>(v[0].get_num().get_si());
      degree_line = l.number;
    } else if (l.key == "phi") {
      want_indices(l, 1);
      in_range(l, l.indices[0], 64);
      if (phi.count(l.indices[0])) throw ConfigError(l.number, l.key, "duplicate entry");
      phi[l.indices[0]] = {l.number, detail::parse_vec(l, l.value, d)};
    } else if (l.key == "R") {
      want_indices(l, 1);
      in_range(l, l.indices[0], 64);
      if (rk.count(l.indices[0])) throw ConfigError(l.number, l.key, "duplicate entry");
      rk[l.indices[0]] = {l.number, detail::parse_matrix(l, d)};
    } else if (l.key == "coherent") {
      want_indices(l, 0);
      if (l.value != "true" && l.value != "false") throw ConfigError(l.number, l.key, "expected true or false");
      coherent = l.value == "true";
    } else {
      throw ConfigError(l.number, l.key, "unknown key");
    }
  }

  if (!eta) throw ConfigError(0, "eta", "missing");
  if (!unit) throw ConfigError(0, "unit", "missing");
  if (degree < 0) throw ConfigError(0, "degree", "missing");
  if (!coherent) throw ConfigError(0, "coherent", "missing");
  if (weights.has_value() != basis.has_value()) throw ConfigError(0, weights ? "basis" : "weights", "weights and basis come together");
  std::vector<std::vector<Vec>> prod(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (products[i][j])
        prod[i][j] = *products[i][j];
      else if (products[j][i])
        prod[i][j] = *products[j][i];
      else
        throw ConfigError(0, "product", "missing b" + std::to_string(i + 1) + "*b" + std::to_string(j + 1));
    }
  for (const auto& [k, entry] : rk)
    if (k > degree) throw ConfigError(entry.first, "R", "order exceeds the truncation degree");
  for (const auto& [k, entry] : phi)
    if (k > degree) throw ConfigError(entry.first, "phi", "index exceeds the truncation degree");

  std::vector<std::string> report = FrobeniusAlgebra::validate(*eta, prod, *unit);
  if (!report.empty()) throw ConfigError(0, "algebra", report.front());
  FrobeniusAlgebra algebra(*eta, prod, *unit);

  SemisimpleData ss;
  if (weights) {
    auto inv = try_inverse(*basis);
    if (!inv) throw ConfigError(0, "basis", "not invertible");
    ss = {*weights, *basis, *inv};
    std::vector<std::string> bad = validate_semisimple(algebra, ss);
    if (!bad.empty()) throw ConfigError(0, "basis", bad.front());
  } else {
    try {
      ss = semisimplify(algebra);
    } catch (const Error& e) {
      throw ConfigError(0, "algebra", e.what());
    }
  }

  std::vector<Matrix> coeffs(degree + 1, Matrix(d, d));
  coeffs[0] = Matrix::identity(d);
  for (const auto& [k, entry] : rk) coeffs[k] = entry.second;
  EndSeries R(coeffs);

  std::vector<Vec> phis(degree, zero_vec(d));
  if (phi.empty() && *coherent)
    phis = coherent_phi(algebra, R);
  else
    for (const auto& [k, entry] : phi) phis[k - 1] = entry.second;

  try {
    return CohFTSpec(algebra, ss, phis, R, degree, *coherent);
  } catch (const ValidationError& e) {
    std::string field = "spec";
    std::string msg = e.what();
    if (msg.find("symplectic") != std::string::npos || msg.find("R_0") != std::string::npos) field = "R";
    if (msg.find("compatibility") != std::string::npos) field = "phi";
    throw ConfigError(field == "spec" ? degree_line : 0, field, msg);
  }
}

// Canonical text form; parse_config(serialize_config(s)) serializes identically.
inline std::string serialize_config(const CohFTSpec& spec) {
  const FrobeniusAlgebra& a = spec.algebra();
  std::size_t d = a.dim();
  std::string out = "dim: " + std::to_string(d) + "\n";
  out += "eta: " + detail::render_matrix(a.eta()) + "\n";
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      out += "product " + std::to_string(i + 1) + " " + std::to_string(j + 1) + ": " + detail::render_plain(a.product(i, j)) + "\n";
  out += "unit: " + detail::render_plain(a.unit()) + "\n";
  out += "weights: " + detail::render_plain(spec.ss().weights) + "\n";
  out += "basis: " + detail::render_matrix(spec.ss().basis) + "\n";
  out += "degree: " + std::to_string(spec.degree()) + "\n";
  for (int j = 1; j <= spec.degree(); ++j) out += "phi " + std::to_string(j) + ": " + detail::render_plain(spec.phi()[j - 1]) + "\n";
  for (int k = 1; k <= spec.degree(); ++k)
    if (!spec.R()[k].is_zero()) out += "R " + std::to_string(k) + ": " + detail::render_matrix(spec.R()[k]) + "\n";
  out += std::string("coherent: ") + (spec.coherent() ? "true" : "false") + "\n";
  return out;
}

}  // namespace cohft

#endif
