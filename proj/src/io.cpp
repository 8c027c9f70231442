#include "cmn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace cmn {

using nlohmann::json;

json state_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  const CMatrix& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim_a", rho.dim_a()}, {"dim_b", rho.dim_b()}, {"matrix", std::move(rows)}};
}

namespace {

int read_dim(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw std::invalid_argument(std::string("state JSON: missing integer field \"") + key + "\"");
  }
  const int d = doc[key].get<int>();
  if (d < 1) throw std::invalid_argument(std::string("state JSON: \"") + key + "\" must be positive");
  return d;
}

double read_real(const json& v, Eigen::Index i, Eigen::Index j) {
  if (!v.is_number()) {
    throw std::invalid_argument("state JSON: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") is not numeric");
  }
  return v.get<double>();
}

}  // namespace

DensityMatrix state_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("state JSON: top level must be an object");
  const int da = read_dim(doc, "dim_a");
  const int db = read_dim(doc, "dim_b");
  const Eigen::Index n = static_cast<Eigen::Index>(da) * db;
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    throw std::invalid_argument("state JSON: missing array field \"matrix\"");
  }
  const json& rows = doc["matrix"];
  if (static_cast<Eigen::Index>(rows.size()) != n) {
    throw std::invalid_argument("state JSON: expected " + std::to_string(n) + " rows, got " +
                                std::to_string(rows.size()));
  }
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("state JSON: row " + std::to_string(i) + " must have " + std::to_string(n) +
                                  " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      if (e.is_number()) {
        m(i, j) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        m(i, j) = Complex(read_real(e[0], i, j), read_real(e[1], i, j));
      } else {
        throw std::invalid_argument("state JSON: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") must be [re, im]");
      }
    }
  }
  return DensityMatrix(da, db, std::move(m));
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return state_from_json(doc);
}

void write_state_file(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write state file: " + path);
  out << state_to_json(rho).dump(2) << '\n';
}

json verdict_to_json(const Verdict& verdict) {
  json criteria = json::array();
  for (const CriterionResult& c : verdict.criteria) {
    criteria.push_back({{"name", c.name},
                        {"value", c.value},
                        {"bound", c.bound},
                        {"violated", c.violated},
                        {"applicable", c.applicable},
                        {"theorem_backed", c.theorem_backed}});
  }
  return {{"entangled", verdict.entangled}, {"triggered_by", verdict.triggered_by}, {"criteria", criteria}};
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_correlation_csv(const CorrelationMatrix& c, std::ostream& out) {
  for (Eigen::Index i = 0; i < c.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.entries.cols(); ++j) {
      if (j) out << ',';
      out << format_number(c.entries(i, j));
    }
    out << '\n';
  }
}

}  // namespace cmn
