#include "sepkit/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "sepkit/kernels.hpp"

namespace sepkit {

namespace {

// A linear triangle needs one cut, a curved one at most kMaxTangents.
constexpr std::size_t kMaxTangents = 8;

RowMatrix powered(const Eigen::MatrixXd& z, double r) {
  const int n = static_cast<int>(z.rows());
  RowMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = i == j ? 0.0 : (r == 1.0 ? std::max(z(i, j), 0.0) : std::pow(std::max(z(i, j), 0.0), r));
  return out;
}

// (x^r + y^r)^{1/r}
double triangle_bound(double x, double y, double r) {
  if (r == 1.0) return x + y;
  return std::pow(std::pow(std::max(x, 0.0), r) + std::pow(std::max(y, 0.0), r), 1.0 / r);
}

// Upper-triangle pair index.
struct PairIndex {
  explicit PairIndex(int n) : n(n), index(static_cast<std::size_t>(n) * n, -1) {
    int e = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        index[static_cast<std::size_t>(i) * n + j] = index[static_cast<std::size_t>(j) * n + i] = e++;
        pairs.emplace_back(i, j);
      }
  }
  int operator()(int i, int j) const { return index[static_cast<std::size_t>(i) * n + j]; }
  int size() const { return static_cast<int>(pairs.size()); }

  int n;
  std::vector<int> index;
  std::vector<std::pair<int, int>> pairs;
};

// a * z[first] + b * z[second] - z[target] >= 0
struct LinearCut {
  int target, first, second;
  double a, b;
  double norm_sq() const { return a * a + b * b + 1.0; }
  double eval(const Eigen::VectorXd& z) const { return a * z(first) + b * z(second) - z(target); }
};

// Tangent plane of (x^r + y^r)^{1/r} at (x0, y0); by 1-homogeneity it passes
// through the origin.
LinearCut tangent_cut(const PairIndex& idx, const TriangleViolation& v, const Eigen::MatrixXd& z, double r) {
  LinearCut cut{idx(v.i, v.k), idx(v.i, v.j), idx(v.j, v.k), 1.0, 1.0};
  if (r != 1.0) {
    constexpr double kFloor = 1e-9;
    const double x0 = std::max(z(v.i, v.j), kFloor), y0 = std::max(z(v.j, v.k), kFloor);
    const double expo = 1.0 / r - 1.0;
    cut.a = std::pow(1.0 + std::pow(y0 / x0, r), expo);
    cut.b = std::pow(1.0 + std::pow(x0 / y0, r), expo);
  }
  return cut;
}

// Euclidean projection onto {z : sum z >= floor, cuts >= 0} by Hildreth's
// dual coordinate ascent; multipliers persist across calls.
class PolyhedralProjector {
 public:
  PolyhedralProjector(int dim, double floor) : dim_(dim), floor_(floor) {}

  void add(const LinearCut& cut) {
    cuts_.push_back(cut);
    lambda_.push_back(0.0);
  }
  std::size_t num_cuts() const { return cuts_.size(); }

  Eigen::VectorXd project(const Eigen::VectorXd& target, double tol, int max_sweeps) {
    Eigen::VectorXd z = target.array() + spread_lambda_;
    for (std::size_t l = 0; l < cuts_.size(); ++l) apply(cuts_[l], lambda_[l], z);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      double biggest = 0.0;
      {
        const double residual = floor_ - kernels::active().sum(z.data(), static_cast<std::size_t>(dim_));
        const double delta = std::max(-spread_lambda_, residual / dim_);
        spread_lambda_ += delta;
        z.array() += delta;
        biggest = std::max(biggest, std::abs(delta) * std::sqrt(static_cast<double>(dim_)));
      }
      for (std::size_t l = 0; l < cuts_.size(); ++l) {
        const auto& cut = cuts_[l];
        const double delta = std::max(-lambda_[l], -cut.eval(z) / cut.norm_sq());
        if (delta == 0.0) continue;
        lambda_[l] += delta;
        apply(cut, delta, z);
        biggest = std::max(biggest, std::abs(delta) * std::sqrt(cut.norm_sq()));
      }
      if (biggest <= tol) break;
    }
    return z;
  }

 private:
  static void apply(const LinearCut& cut, double scale, Eigen::VectorXd& z) {
    z(cut.first) += scale * cut.a;
    z(cut.second) += scale * cut.b;
    z(cut.target) -= scale;
  }

  int dim_;
  double floor_;
  double spread_lambda_ = 0.0;
  std::vector<LinearCut> cuts_;
  std::vector<double> lambda_;
};

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
}

// D^{-1/2} X D^{-1/2}; rows with a vanishing diagonal become unit coordinate rows.
Eigen::MatrixXd unit_diagonal(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  Eigen::VectorXd scale(n);
  for (int i = 0; i < n; ++i) scale(i) = x(i, i) > 1e-12 ? 1.0 / std::sqrt(x(i, i)) : 0.0;
  Eigen::MatrixXd out = scale.asDiagonal() * x * scale.asDiagonal();
  for (int i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Eigen::MatrixXd z_of(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd z = (Eigen::MatrixXd::Ones(x.rows(), x.cols()) - x).cwiseMax(0.0).cwiseMin(2.0);
  z.diagonal().setZero();
  return z;
}

double upper_sum(const Eigen::MatrixXd& z) {
  double s = 0.0;
  for (int i = 0; i < z.rows(); ++i)
    for (int j = i + 1; j < z.cols(); ++j) s += z(i, j);
  return s;
}

}  // namespace

std::vector<TriangleViolation> violated_triangles(const Eigen::MatrixXd& z, double exponent, double tol,
                                                  std::size_t limit) {
  const int n = static_cast<int>(z.rows());
  std::vector<TriangleViolation> out;
  if (n < 3) return out;
  const RowMatrix pz = powered(z, exponent);
  const auto& k = kernels::active();
  std::vector<std::size_t> hits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int l = i + 1; l < n; ++l) {
      const double* ri = pz.row(i).data();
      const double* rl = pz.row(l).data();
      const std::size_t count = k.select_pair_sum_below(ri, rl, static_cast<std::size_t>(n), pz(i, l) - tol, hits.data());
      for (std::size_t h = 0; h < count; ++h) {
        const int j = static_cast<int>(hits[h]);
        if (j == i || j == l) continue;
        out.push_back({i, j, l, pz(i, l) - ri[j] - rl[j]});
      }
    }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.violation > b.violation; });
  if (out.size() > limit) out.resize(limit);
  return out;
}

Eigen::MatrixXd interior_point(const ZRegion& region) {
  const int n = region.n;
  const auto range = balanced_size_range(n, region.c);
  if (!range) require_balance_feasible(n, region.c);
  // Size closest to n/2 within the admissible range.
  const int side = std::clamp(n / 2, range->first, range->second);
  Eigen::MatrixXd cut = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((i < side) != (j < side)) cut(i, j) = 2.0;
  Eigen::MatrixXd ident = Eigen::MatrixXd::Ones(n, n);
  ident.diagonal().setZero();
  const double floor = region.spread_floor();
  const double cut_spread = upper_sum(cut), ident_spread = upper_sum(ident);
  double t = 0.25;
  if (ident_spread < floor) t = std::min(t, 0.5 * (cut_spread - floor) / (cut_spread - ident_spread));
  return (1.0 - t) * cut + t * ident;
}

double restore_feasibility(Eigen::MatrixXd& z, const Eigen::MatrixXd& interior, const ZRegion& region,
                           double margin) {
  const int n = region.n;
  const double r = region.exponent();
  const double floor = region.spread_floor();

  auto required_weight = [&](const Eigen::MatrixXd& cur) {
    double theta = 0.0;
    const double s = upper_sum(cur), s_in = upper_sum(interior);
    if (s < floor + margin) theta = std::max(theta, (floor + margin - s) / (s_in - s));
    // Each constraint g(Z) = (z_ij^r + z_jk^r)^{1/r} - z_ik is concave, so
    // g(mix) >= (1 - theta) g(Z) + theta g(interior).
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          const double g = triangle_bound(cur(i, j), cur(j, k), r) - cur(i, k);
          if (g >= margin) continue;
          const double g_in = triangle_bound(interior(i, j), interior(j, k), r) - interior(i, k);
          theta = std::max(theta, (margin - g) / (g_in - g));
        }
    return std::min(theta, 1.0);
  };

  double total = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    double theta = required_weight(z);
    if (theta <= 0.0) break;
    if (attempt > 0) theta = std::min(1.0, theta * 2.0);
    z = (1.0 - theta) * z + theta * interior;
    total = 1.0 - (1.0 - total) * (1.0 - theta);
    if (theta >= 1.0) break;
  }
  return total;
}

struct CutPool::Impl {
  Impl(const ZRegion& region) : region(region), projector(region.n * (region.n - 1) / 2, region.spread_floor()) {}
  ZRegion region;
  PolyhedralProjector projector;
  // Tangent slopes already present per triangle.
  std::map<std::tuple<int, int, int>, std::vector<double>> slopes;
};

CutPool::CutPool(const ZRegion& region) : impl_(std::make_unique<Impl>(region)) {}
CutPool::~CutPool() = default;
CutPool::CutPool(CutPool&&) noexcept = default;
CutPool& CutPool::operator=(CutPool&&) noexcept = default;
std::size_t CutPool::size() const { return impl_->projector.num_cuts(); }

LinearSolveResult minimize_linear(const Eigen::MatrixXd& weights, const ZRegion& region,
                                  const Eigen::MatrixXd& warm_start, const Eigen::MatrixXd& interior,
                                  const LinearSolveOptions& opts) {
  CutPool pool(region);
  return minimize_linear(weights, region, warm_start, interior, opts, pool);
}

LinearSolveResult minimize_linear(const Eigen::MatrixXd& weights, const ZRegion& region,
                                  const Eigen::MatrixXd& warm_start, const Eigen::MatrixXd& interior,
                                  const LinearSolveOptions& opts, CutPool& pool) {
  const int n = region.n;
  const ZRegion& owner = pool.impl_->region;
  if (owner.n != n || owner.p != region.p || owner.c != region.c) throw DomainError("cut pool belongs to another region");
  const double r = region.exponent();
  const PairIndex idx(n);
  const int dim = idx.size();
  const std::size_t batch = opts.cut_batch == 0 ? static_cast<std::size_t>(n) : opts.cut_batch;
  LinearSolveStats stats;

  if (n == 1) return {Eigen::MatrixXd::Zero(1, 1), stats};

  double wmax = 0.0;
  for (const auto& [i, j] : idx.pairs) wmax = std::max(wmax, std::abs(weights(i, j)));
  // Objective in Gram coordinates: sum w_ij (1 - x_ij) = const - <W/2, X>.
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  if (wmax > 0.0)
    for (const auto& [i, j] : idx.pairs) cost(i, j) = cost(j, i) = -0.5 * weights(i, j) / wmax;

  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n);
  Eigen::MatrixXd y = ones - warm_start;
  y.diagonal().setOnes();
  Eigen::MatrixXd x = y;
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  double rho = opts.rho;

  PolyhedralProjector& projector = pool.impl_->projector;
  auto& slopes = pool.impl_->slopes;
  auto add_cuts = [&](const Eigen::MatrixXd& z_now) {
    std::size_t added = 0;
    for (const auto& v : violated_triangles(z_now, r, opts.tol, batch)) {
      if (projector.num_cuts() >= opts.max_cuts) break;
      const LinearCut cut = tangent_cut(idx, v, z_now, r);
      auto& known = slopes[{v.i, v.j, v.k}];
      const bool duplicate = std::ranges::any_of(known, [&](double a) { return std::abs(a - cut.a) <= 1e-6 * cut.a; });
      if (duplicate || known.size() >= (r == 1.0 ? 1 : kMaxTangents)) continue;
      known.push_back(cut.a);
      projector.add(cut);
      ++added;
    }
    return added;
  };
  add_cuts(warm_start);

  const double abs_tol = opts.tol * n;
  constexpr int kCheckEvery = 100;
  constexpr int kSweeps = 20;
  constexpr double kRelax = 1.6;
  Eigen::VectorXd target(dim);
  int since_check = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    x = project_psd(y - u);
    // Over-relaxed ADMM.
    const Eigen::MatrixXd x_hat = kRelax * x + (1.0 - kRelax) * y;
    const Eigen::MatrixXd v = x_hat + u - cost / rho;
    for (int e = 0; e < dim; ++e) target(e) = 1.0 - v(idx.pairs[e].first, idx.pairs[e].second);
    const Eigen::VectorXd z = projector.project(target, 0.1 * opts.tol, kSweeps);
    const Eigen::MatrixXd y_prev = y;
    for (int e = 0; e < dim; ++e) {
      const auto [i, j] = idx.pairs[e];
      y(i, j) = y(j, i) = 1.0 - z(e);
    }
    y.diagonal().setOnes();
    u += x_hat - y;
    ++stats.iterations;
    ++since_check;

    stats.primal_residual = (x - y).norm();
    stats.dual_residual = rho * (y - y_prev).norm();
    const bool settled = stats.primal_residual <= abs_tol && stats.dual_residual <= abs_tol;
    if (settled || since_check >= kCheckEvery) {
      since_check = 0;
      ++stats.rounds;
      if (add_cuts(z_of(unit_diagonal(x))) == 0 && settled) {
        stats.converged = true;
        break;
      }
    }
    if (it % 25 == 24) {
      if (stats.primal_residual > 10.0 * stats.dual_residual) {
        rho *= 2.0;
        u /= 2.0;
      } else if (stats.dual_residual > 10.0 * stats.primal_residual) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }
  stats.active_cuts = projector.num_cuts();

  Eigen::MatrixXd result = z_of(unit_diagonal(x));
  stats.restore_weight = restore_feasibility(result, interior, region);
  return {std::move(result), stats};
}

}  // namespace sepkit
