#include "sepkit/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sepkit/errors.hpp"

namespace sepkit {

using nlohmann::json;

namespace {

std::size_t require_count(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0)
    throw DomainError(std::string("document needs a nonnegative integer \"") + key + "\"");
  return doc[key].get<std::size_t>();
}

RowMatrix read_rows(const json& rows, std::size_t n, std::size_t d, const char* key) {
  if (!rows.is_array() || rows.size() != n)
    throw DomainError(std::string("\"") + key + "\" must be an array of " + std::to_string(n) + " rows");
  RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != d)
      throw DomainError("row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
    for (std::size_t j = 0; j < d; ++j) {
      if (!row[j].is_number()) throw DomainError("row " + std::to_string(i) + " has a non-numeric entry");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
    }
  }
  return m;
}

}  // namespace

json embedding_to_json(const Embedding& e) {
  json rows = json::array();
  for (int i = 0; i < e.size(); ++i) {
    auto v = e.vector(i);
    rows.push_back(std::vector<double>(v.begin(), v.end()));
  }
  return {{"n", e.size()}, {"d", e.dim()}, {"vectors", std::move(rows)}};
}

Embedding embedding_from_json(const json& doc) {
  const std::size_t n = require_count(doc, "n");
  const std::size_t d = require_count(doc, "d");
  if (!doc.contains("vectors")) throw DomainError("embedding document needs \"vectors\"");
  return Embedding(read_rows(doc["vectors"], n, d, "vectors"));
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"matrix", std::move(rows)}};
}

Eigen::MatrixXd matrix_from_json(const json& doc) {
  const std::size_t n = require_count(doc, "n");
  if (!doc.contains("matrix")) throw DomainError("matrix document needs \"matrix\"");
  return read_rows(doc["matrix"], n, n, "matrix");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace sepkit
