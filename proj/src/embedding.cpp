#include "sepkit/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sepkit/errors.hpp"
#include "sepkit/kernels.hpp"

namespace sepkit {

RelaxationParams::RelaxationParams(double p, double c) : p_(p), c_(c) {
  if (!(p > 0.0 && p <= 2.0)) throw DomainError("exponent p must lie in (0, 2], got " + std::to_string(p));
  if (!(c > 0.0 && c <= 0.5)) throw DomainError("balance c must lie in (0, 1/2], got " + std::to_string(c));
}

Embedding::Embedding(RowMatrix vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() == 0 || vectors_.cols() == 0) throw DomainError("embedding needs at least one vector and dimension");
  if (!vectors_.allFinite()) throw DomainError("embedding has non-finite coordinates");
}

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

void require_square_symmetric(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError(std::string(what) + " must be square and nonempty");
  if (!m.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) throw DomainError(std::string(what) + " is not symmetric");
}

}  // namespace

GramForm GramForm::from_matrix(Eigen::MatrixXd x, const Tolerances& tol) {
  require_square_symmetric(x, "Gram matrix");
  if ((x.diagonal().array() - 1.0).abs().maxCoeff() > tol.unit) throw DomainError("Gram matrix diagonal must be 1");
  const double lo = min_eigenvalue(x);
  if (lo < -tol.psd) throw NotPsdError(lo, tol.psd);
  return GramForm(std::move(x));
}

ZForm ZForm::from_matrix(Eigen::MatrixXd z, const Tolerances& tol) {
  require_square_symmetric(z, "Z matrix");
  if (z.diagonal().cwiseAbs().maxCoeff() > tol.unit) throw DomainError("Z matrix diagonal must be 0");
  if (z.minCoeff() < -tol.psd || z.maxCoeff() > 2.0 + tol.psd) throw DomainError("Z entries must lie in [0, 2]");
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(z.rows(), z.cols()) - z;
  const double lo = min_eigenvalue(x);
  if (lo < -tol.psd) throw NotPsdError(lo, tol.psd);
  return ZForm(std::move(z));
}

Embedding cut_to_embedding(const Graph& g, const Cut& s) {
  if (s.universe() != g.num_vertices()) throw DomainError("cut universe does not match graph");
  RowMatrix v(g.num_vertices(), 1);
  for (int i = 0; i < g.num_vertices(); ++i) v(i, 0) = s.contains(i) ? 1.0 : -1.0;
  return Embedding(std::move(v));
}

double objective(const Graph& g, const Embedding& e, double p) {
  if (e.size() != g.num_vertices()) throw DomainError("embedding size does not match graph");
  // (d^2 / 4)^{p/2} == d^p / 2^p, and is exactly 1 for antipodal unit vectors.
  double total = 0.0;
  for (const auto& [a, b] : g.edges()) total += std::pow(kernels::squared_distance(e.vector(a), e.vector(b)) / 4.0, p / 2.0);
  return total;
}

double spread(const Embedding& e) {
  double total = 0.0;
  for (int i = 0; i < e.size(); ++i)
    for (int j = i + 1; j < e.size(); ++j) total += kernels::squared_distance(e.vector(i), e.vector(j));
  return total;
}

double spread_bound(int n, double c) { return 4.0 * c * (1.0 - c) * n * n; }
double z_spread_bound(int n, double c) { return 2.0 * c * (1.0 - c) * n * n; }

double max_triangle_violation(const Eigen::Ref<const RowMatrix>& d, const Tolerances& tol) {
  const int n = static_cast<int>(d.rows());
  if (n < 3) return 0.0;
  double worst = 0.0;
  if (n <= tol.triangle_enumeration_cap) {
    const auto& k = kernels::active();
    for (int i = 0; i < n; ++i)
      for (int l = i + 1; l < n; ++l)
        worst = std::max(worst, d(i, l) - k.min_pair_sum(d.row(i).data(), d.row(l).data(), static_cast<std::size_t>(n)));
    return worst;
  }
  std::mt19937_64 rng(tol.triangle_sample_seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (std::size_t s = 0; s < tol.triangle_samples; ++s) {
    const int i = pick(rng), j = pick(rng), l = pick(rng);
    worst = std::max(worst, d(i, l) - d(i, j) - d(j, l));
  }
  return worst;
}

FeasibilityReport check_feasibility(const Embedding& e, const RelaxationParams& params, const Tolerances& tol) {
  const int n = e.size();
  FeasibilityReport r;
  for (int i = 0; i < n; ++i)
    r.max_unit_violation = std::max(r.max_unit_violation, std::abs(std::sqrt(kernels::dot(e.vector(i), e.vector(i))) - 1.0));
  RowMatrix dist_p = RowMatrix::Zero(n, n);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double sq = kernels::squared_distance(e.vector(i), e.vector(j));
      total += sq;
      dist_p(i, j) = dist_p(j, i) = std::pow(sq, params.p() / 2.0);
    }
  r.max_triangle_violation = max_triangle_violation(dist_p, tol);
  r.spread_slack = total - spread_bound(n, params.c());
  r.feasible = r.max_unit_violation <= tol.unit && r.max_triangle_violation <= tol.triangle && r.spread_slack >= -tol.spread;
  return r;
}

FeasibilityReport check_feasibility(const ZForm& zf, const RelaxationParams& params, const Tolerances& tol) {
  const auto& z = zf.matrix();
  const int n = zf.size();
  FeasibilityReport r;
  r.max_unit_violation = z.diagonal().cwiseAbs().maxCoeff();
  // ||v_i - v_j||^2 = 2 z_ij
  RowMatrix dist_p = RowMatrix::Zero(n, n);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double sq = 2.0 * std::max(0.0, z(i, j));
      total += sq;
      dist_p(i, j) = dist_p(j, i) = std::pow(sq, params.p() / 2.0);
    }
  r.max_triangle_violation = max_triangle_violation(dist_p, tol);
  r.spread_slack = total - spread_bound(n, params.c());
  r.min_eigenvalue = min_eigenvalue(Eigen::MatrixXd::Ones(n, n) - z);
  r.feasible = r.max_unit_violation <= tol.unit && r.max_triangle_violation <= tol.triangle &&
               r.spread_slack >= -tol.spread && r.min_eigenvalue >= -tol.psd;
  return r;
}

GramForm gram_from_embedding(const Embedding& e) {
  const int n = e.size();
  Eigen::MatrixXd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) x(i, j) = x(j, i) = kernels::dot(e.vector(i), e.vector(j));
  return GramForm::from_matrix(std::move(x));
}

Embedding embedding_from_gram(const GramForm& gram, const Tolerances& tol) {
  const auto& x = gram.matrix();
  const int n = gram.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  if (lambda(0) < -tol.psd) throw NotPsdError(lambda(0), tol.psd);
  const double top = std::max(lambda(n - 1), 0.0);
  const double rank_floor = top * n * std::numeric_limits<double>::epsilon();
  int rank = 0;
  for (int k = n - 1; k >= 0 && lambda(k) > rank_floor; --k) ++rank;
  rank = std::max(rank, 1);
  RowMatrix v(n, rank);
  for (int c = 0; c < rank; ++c) {
    const int k = n - 1 - c;
    v.col(c) = eig.eigenvectors().col(k) * std::sqrt(std::max(lambda(k), 0.0));
  }
  for (int i = 0; i < n; ++i) {
    const double norm = v.row(i).norm();
    if (norm > 0.0) v.row(i) /= norm;
  }
  return Embedding(std::move(v));
}

ZForm z_from_gram(const GramForm& x) {
  const int n = x.size();
  Eigen::MatrixXd z = Eigen::MatrixXd::Ones(n, n) - x.matrix();
  z.diagonal().setZero();
  return ZForm(std::move(z));
}

GramForm gram_from_z(const ZForm& z) {
  const int n = z.size();
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(n, n) - z.matrix();
  x.diagonal().setOnes();
  return GramForm(std::move(x));
}

double objective_z(const Graph& g, const Eigen::MatrixXd& z, double p, double tol) {
  if (z.rows() != g.num_vertices()) throw DomainError("Z size does not match graph");
  double total = 0.0;
  for (const auto& [a, b] : g.edges()) {
    const double v = z(a, b);
    if (v < -tol) throw DomainError("negative z entry " + std::to_string(v) + " in objective");
    // (z/2)^{p/2} == z^{p/2} / 2^{p/2}, exactly 1 at z = 2.
    total += std::pow(std::max(v, 0.0) / 2.0, p / 2.0);
  }
  return total;
}

}  // namespace sepkit
