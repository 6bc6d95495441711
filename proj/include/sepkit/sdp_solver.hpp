#pragma once

#include <cstdint>
#include <optional>

#include "sepkit/embedding.hpp"
#include "sepkit/feasible_set.hpp"
#include "sepkit/graph.hpp"

namespace sepkit {

enum class WarmStart { kCut, kOrthonormal };

struct SdpOptions {
  double tol = 1e-6;
  int max_iter = 50000;
  // Violated triangles added per round; 0 means n.
  std::size_t triangle_batch = 0;
  std::uint64_t seed = 0;
  WarmStart warm_start = WarmStart::kCut;
  // Exact-oracle cap used for the cut warm start.
  int cut_warm_start_cap = kDefaultBruteForceCap;
  // Extra feasible point; the returned value never exceeds its objective.
  std::optional<GramForm> initial_point;

  void validate() const;
};

struct SolveReport {
  double value = 0.0;
  FeasibilityReport residuals;
  int iterations = 0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  bool converged = false;
  // Objective of the best starting point, before optimisation.
  double start_value = 0.0;
  std::size_t active_cuts = 0;
  // Concave solver only.
  int outer_iterations = 0;
  int best_start = -1;
  int num_starts = 0;
  double certificate_gap = 0.0;
};

inline constexpr int kSdpVertexCap = 64;

// (1/4) sum_E ||v_i - v_j||^2 = (1/2) sum_E z_ij.
double sdp_objective(const Graph& g, const Eigen::MatrixXd& z);

struct SdpResult {
  GramForm gram;
  SolveReport report;
};

SdpResult solve_sdp(const Graph& g, double c, const SdpOptions& opts = {});

// l2^2 triangle inequalities violated by more than tol, worst first.
// Violation is measured in squared-distance units.
std::vector<TriangleViolation> violated_triangles(const GramForm& x, double tol);

}  // namespace sepkit
