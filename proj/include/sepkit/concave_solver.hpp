#pragma once

#include <cstdint>

#include "sepkit/embedding.hpp"
#include "sepkit/feasible_set.hpp"
#include "sepkit/graph.hpp"
#include "sepkit/sdp_solver.hpp"

namespace sepkit {

struct ConcaveOptions {
  // Number of cut-seeded starting points (best cuts first).
  int starts = 8;
  // Subproblem tolerance; also the improvement a linearisation step must beat.
  double inner_tol = 1e-6;
  int max_outer = 50;
  // ADMM iteration cap per subproblem.
  int max_iter = 20000;
  std::uint64_t seed = 0;
  // Also start from the p = 2 relaxation's solution.
  bool sdp_start = true;
  int threads = 1;
  // z below this is raised to it when forming gradients (z^{p/2-1} blows up at 0).
  double gradient_floor = 1e-4;

  void validate() const;
};

inline constexpr int kConcaveVertexCap = 24;

struct ConcaveResult {
  ZForm z;
  SolveReport report;
};

// Multistart successive linearisation for the concave program
// min (1/2^{p/2}) sum_E z_ij^{p/2} over the convex z-region, 0 < p < 2.
ConcaveResult solve_concave(const Graph& g, double c, double p, const ConcaveOptions& opts = {});

// Z of the +-1 embedding of a c-balanced cut: 0 within sides, 2 across.
ZForm feasible_point_from_cut(const Graph& g, const Cut& s, double c);

// argmin <grad, Z> over the feasible region for exponent p (upper triangle of grad is read).
ZForm linear_subproblem(const Eigen::MatrixXd& grad, const Graph& g, double c, double p, double inner_tol = 1e-6);

// Gradient of objective_z with z floored at `floor`; symmetric, zero off edges.
Eigen::MatrixXd objective_z_gradient(const Graph& g, const Eigen::MatrixXd& z, double p, double floor);

// objective(z) - objective(z') for z' the minimiser of the linearisation at z.
double linearization_improvement(const Graph& g, double c, double p, const Eigen::MatrixXd& z,
                                 const ConcaveOptions& opts = {});

// Exhaustive grid search over (z01, z02, z12) in [0, 2]^3 for a 3-vertex
// graph, keeping points that satisfy the triangle, spread and PSD constraints.
double grid_oracle_n3(const Graph& g, double c, double p, double resolution = 0.02);

}  // namespace sepkit
