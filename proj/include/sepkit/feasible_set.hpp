#pragma once

// The convex region shared by both relaxations, in z coordinates
// (z_ij = 1 - <v_i, v_j>):
//
//   z_ii = 0,   J - Z PSD,   sum_{i<j} z_ij >= 2c(1-c)n^2,
//   z_ij^r + z_jk^r >= z_ik^r for all i, j, k, with r = p/2.
//
// For r = 1 the triangle family is linear. For r < 1 each constraint reads
// z_ik <= (z_ij^r + z_jk^r)^{1/r}, the hypograph of a concave, 1-homogeneous
// function, so its tangent planes through the origin are valid outer cuts.
// minimize_linear works on this region with an ADMM splitting (spectral PSD
// projection / polyhedral projection) and adds violated triangles lazily.

#include <Eigen/Dense>
#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

#include "sepkit/embedding.hpp"
#include "sepkit/errors.hpp"

namespace sepkit {

struct ZRegion {
  int n;
  double p;
  double c;
  double exponent() const noexcept { return p / 2.0; }
  double spread_floor() const { return z_spread_bound(n, c); }
};

// Long side (i, k), middle vertex j; violation = z_ik^r - z_ij^r - z_jk^r.
struct TriangleViolation {
  int i, j, k;
  double violation;
};

// All triangle constraints violated by more than tol, largest first, at most limit.
std::vector<TriangleViolation> violated_triangles(const Eigen::MatrixXd& z, double exponent, double tol,
                                                  std::size_t limit = std::numeric_limits<std::size_t>::max());

// Strictly feasible point: the most balanced admissible split blended toward
// Z = J - I. Throws InfeasibleBalanceError if no admissible split exists.
Eigen::MatrixXd interior_point(const ZRegion& region);

// Moves z toward `interior` by the smallest weight that makes every spread and
// triangle constraint hold with `margin`. J - z must already be PSD with unit
// diagonal. Returns the weight used.
double restore_feasibility(Eigen::MatrixXd& z, const Eigen::MatrixXd& interior, const ZRegion& region,
                           double margin = 1e-11);

struct LinearSolveOptions {
  double tol = 1e-6;
  int max_iter = 50000;
  // Violated triangles added per round; 0 means n.
  std::size_t cut_batch = 0;
  std::size_t max_cuts = 100000;
  double rho = 1.0;
};

struct LinearSolveStats {
  int iterations = 0;
  int rounds = 0;
  std::size_t active_cuts = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double restore_weight = 0.0;
};

struct LinearSolveResult {
  Eigen::MatrixXd z;
  LinearSolveStats stats;
};

// Minimises sum_{i<j} w_ij z_ij over the region. `weights` is symmetric (only
// the strict upper triangle is read). `warm_start` seeds the iteration;
// `interior` must be strictly feasible. The returned z is always feasible.
LinearSolveResult minimize_linear(const Eigen::MatrixXd& weights, const ZRegion& region,
                                  const Eigen::MatrixXd& warm_start, const Eigen::MatrixXd& interior,
                                  const LinearSolveOptions& opts);

// Outer approximation of the triangle family built up by minimize_linear. It
// does not depend on the objective, so successive subproblems over the same
// region can share one pool.
class CutPool {
 public:
  explicit CutPool(const ZRegion& region);
  ~CutPool();
  CutPool(CutPool&&) noexcept;
  CutPool& operator=(CutPool&&) noexcept;
  std::size_t size() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
  friend LinearSolveResult minimize_linear(const Eigen::MatrixXd&, const ZRegion&, const Eigen::MatrixXd&,
                                           const Eigen::MatrixXd&, const LinearSolveOptions&, CutPool&);
};

LinearSolveResult minimize_linear(const Eigen::MatrixXd& weights, const ZRegion& region,
                                  const Eigen::MatrixXd& warm_start, const Eigen::MatrixXd& interior,
                                  const LinearSolveOptions& opts, CutPool& pool);

// Raised when a solver cannot produce a feasible point within its budget.
class NonConvergedError : public Error {
 public:
  NonConvergedError(const std::string& what, Eigen::MatrixXd best) : Error(what), best_(std::move(best)) {}
  const Eigen::MatrixXd& best_iterate() const noexcept { return best_; }

 private:
  Eigen::MatrixXd best_;
};

}  // namespace sepkit
