#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sepkit/feasible_set.hpp"
#include "sepkit/rng.hpp"

namespace sepkit {

struct SuiteResult {
  explicit SuiteResult(std::string suite = {}) : name(std::move(suite)) {}

  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::vector<std::pair<std::string, double>> metrics;
  // First few failure descriptions.
  std::vector<std::string> failures;
};

// concavity, convexity, hessian, gaussian, roundtrip, soundness
const std::vector<std::string>& suite_names();

// Throws DomainError naming the known suites for an unknown name.
SuiteResult run_suite(std::string_view name, std::uint64_t seed);

// "all" or a single suite name.
std::vector<SuiteResult> run_suites(std::string_view selector, std::uint64_t seed);

// Rejection sampler for points of the z-region: Z = J - V V^T for random unit
// vectors in a random low dimension, kept when every constraint holds.
// Dimension 1 yields cut points, which are extreme.
Eigen::MatrixXd sample_feasible_z(const ZRegion& region, Rng& rng);

}  // namespace sepkit
