#pragma once

#include <string>

#include <json.hpp>

#include "sepkit/embedding.hpp"

namespace sepkit {

// {"n": n, "d": d, "vectors": [[...], ...]}
nlohmann::json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const nlohmann::json& doc);

// {"n": n, "matrix": [[...], ...]}
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

// Non-finite doubles become null so documents stay valid JSON.
nlohmann::json finite_or_null(double x);

}  // namespace sepkit
