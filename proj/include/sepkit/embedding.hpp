#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "sepkit/graph.hpp"

namespace sepkit {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Tolerances {
  double unit = 1e-8;
  double triangle = 1e-8;
  double psd = 1e-7;
  double spread = 1e-8;
  // Above this many vertices the triangle check samples triples instead of
  // enumerating all of them.
  int triangle_enumeration_cap = 64;
  std::size_t triangle_samples = 200000;
  std::uint64_t triangle_sample_seed = 0x5eed;
};

// Exponent p in (0, 2] and balance fraction c in (0, 1/2].
class RelaxationParams {
 public:
  RelaxationParams(double p, double c);
  double p() const noexcept { return p_; }
  double c() const noexcept { return c_; }

 private:
  double p_;
  double c_;
};

// n vectors in R^d, one per vertex, stored row-wise. Unit length is the
// expected state but is not enforced here: check_feasibility reports it.
class Embedding {
 public:
  explicit Embedding(RowMatrix vectors);

  int size() const noexcept { return static_cast<int>(vectors_.rows()); }
  int dim() const noexcept { return static_cast<int>(vectors_.cols()); }
  std::span<const double> vector(int i) const {
    return {vectors_.data() + static_cast<std::ptrdiff_t>(i) * vectors_.cols(), static_cast<std::size_t>(vectors_.cols())};
  }
  const RowMatrix& matrix() const noexcept { return vectors_; }

 private:
  RowMatrix vectors_;
};

class ZForm;

// Symmetric matrix of inner products x_ij = <v_i, v_j>; unit diagonal, PSD.
class GramForm {
 public:
  // Validates symmetry, unit diagonal and PSD (min eigenvalue >= -tol.psd).
  static GramForm from_matrix(Eigen::MatrixXd x, const Tolerances& tol = {});
  int size() const noexcept { return static_cast<int>(x_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return x_; }

 private:
  friend GramForm gram_from_z(const ZForm& z);
  explicit GramForm(Eigen::MatrixXd x) : x_(std::move(x)) {}
  Eigen::MatrixXd x_;
};

// z_ij = 1 - x_ij: zero diagonal, entries in [0, 2], J - Z PSD.
class ZForm {
 public:
  static ZForm from_matrix(Eigen::MatrixXd z, const Tolerances& tol = {});
  int size() const noexcept { return static_cast<int>(z_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return z_; }

 private:
  friend ZForm z_from_gram(const GramForm& x);
  explicit ZForm(Eigen::MatrixXd z) : z_(std::move(z)) {}
  Eigen::MatrixXd z_;
};

struct FeasibilityReport {
  double max_unit_violation = 0.0;
  // Largest ||v_i - v_k||^p - ||v_i - v_j||^p - ||v_j - v_k||^p, clamped at 0.
  double max_triangle_violation = 0.0;
  // spread - 4c(1-c)n^2; negative means violated.
  double spread_slack = 0.0;
  // Only meaningful for matrix forms; 0 for embeddings.
  double min_eigenvalue = 0.0;
  bool feasible = false;
};

Embedding cut_to_embedding(const Graph& g, const Cut& s);

// (1/2^p) * sum over edges of ||v_i - v_j||^p.
double objective(const Graph& g, const Embedding& e, double p);

// Sum over all pairs i<j of ||v_i - v_j||^2.
double spread(const Embedding& e);

// 4c(1-c)n^2, the vector-form spread bound.
double spread_bound(int n, double c);
// 2c(1-c)n^2, the same bound expressed on sum_{i<j} z_ij.
double z_spread_bound(int n, double c);

FeasibilityReport check_feasibility(const Embedding& e, const RelaxationParams& params, const Tolerances& tol = {});
// Same three constraint families evaluated on a Z matrix (plus PSD of J - Z).
FeasibilityReport check_feasibility(const ZForm& z, const RelaxationParams& params, const Tolerances& tol = {});

GramForm gram_from_embedding(const Embedding& e);
// Factorises X = V V^T by eigendecomposition. Eigenvalues below -tol.psd are
// rejected with NotPsdError; those in [-tol.psd, 0) are clipped.
Embedding embedding_from_gram(const GramForm& x, const Tolerances& tol = {});

ZForm z_from_gram(const GramForm& x);
GramForm gram_from_z(const ZForm& z);

// (1/2^{p/2}) * sum over edges of z_ij^{p/2}. Entries below -tol are a
// DomainError; entries in [-tol, 0) count as 0.
double objective_z(const Graph& g, const Eigen::MatrixXd& z, double p, double tol = 1e-8);
inline double objective_z(const Graph& g, const ZForm& z, double p, double tol = 1e-8) {
  return objective_z(g, z.matrix(), p, tol);
}

// max over ordered triples of D_ik - D_ij - D_jk for a symmetric matrix D with
// zero diagonal, clamped at 0. Enumerates all triples up to tol.triangle_enumeration_cap
// vertices and samples beyond.
double max_triangle_violation(const Eigen::Ref<const RowMatrix>& d, const Tolerances& tol = {});

}  // namespace sepkit
