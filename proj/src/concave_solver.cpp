#include "sepkit/concave_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <set>

namespace sepkit {

void ConcaveOptions::validate() const {
  if (starts < 1) throw DomainError("starts must be at least 1");
  if (!(inner_tol > 0.0)) throw DomainError("inner_tol must be positive");
  if (max_outer < 1 || max_iter < 1) throw DomainError("iteration caps must be positive");
  if (!(gradient_floor > 0.0)) throw DomainError("gradient_floor must be positive");
}

namespace {

Eigen::MatrixXd cut_z(const Cut& s) {
  const int n = s.universe();
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.contains(i) != s.contains(j)) z(i, j) = 2.0;
  return z;
}

// Up to `count` c-balanced cuts with the fewest crossing edges. Exhaustive for
// small n, otherwise drawn at random.
std::vector<Cut> seed_cuts(const Graph& g, double c, int count, std::uint64_t seed) {
  const int n = g.num_vertices();
  std::vector<Cut> pool;
  if (n <= 12) {
    pool = enumerate_balanced_cuts(g, c);
  } else {
    const auto range = *balanced_size_range(n, c);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_pick(range.first, range.second);
    std::set<std::vector<Vertex>> seen;
    std::vector<Vertex> order(n);
    for (int attempt = 0; attempt < 64 * count && static_cast<int>(pool.size()) < 8 * count; ++attempt) {
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<Vertex> members(order.begin(), order.begin() + size_pick(rng));
      Cut cut(n, members);
      if (!cut.contains(0)) cut = cut.complement();
      if (seen.insert(std::vector<Vertex>(cut.members().begin(), cut.members().end())).second) pool.push_back(cut);
    }
  }
  std::vector<std::size_t> sizes(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) sizes[i] = cut_size(g, pool[i]);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sizes[a] < sizes[b]; });
  std::vector<Cut> out;
  for (std::size_t i = 0; i < order.size() && static_cast<int>(out.size()) < count; ++i) out.push_back(pool[order[i]]);
  return out;
}

struct SlpRun {
  Eigen::MatrixXd z;
  double value = 0.0;
  int outer = 0;
  int iterations = 0;
  double last_gap = 0.0;
};

SlpRun successive_linearization(const Graph& g, const ZRegion& region, const Eigen::MatrixXd& start,
                                const Eigen::MatrixXd& interior, const ConcaveOptions& opts) {
  SlpRun run{start, objective_z(g, start, region.p), 0, 0, 0.0};
  LinearSolveOptions lopts;
  lopts.tol = opts.inner_tol;
  lopts.max_iter = opts.max_iter;
  CutPool pool(region);
  for (; run.outer < opts.max_outer; ++run.outer) {
    const Eigen::MatrixXd grad = objective_z_gradient(g, run.z, region.p, opts.gradient_floor);
    auto step = minimize_linear(grad, region, run.z, interior, lopts, pool);
    run.iterations += step.stats.iterations;
    const double value = objective_z(g, step.z, region.p);
    run.last_gap = run.value - value;
    if (run.last_gap <= opts.inner_tol) break;
    run.z = std::move(step.z);
    run.value = value;
  }
  return run;
}

}  // namespace

Eigen::MatrixXd objective_z_gradient(const Graph& g, const Eigen::MatrixXd& z, double p, double floor) {
  const int n = g.num_vertices();
  const double r = p / 2.0;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, n);
  // d/dz (z/2)^r = (r/2) (z/2)^{r-1}
  for (const auto& [a, b] : g.edges()) grad(a, b) = grad(b, a) = 0.5 * r * std::pow(std::max(z(a, b), floor) / 2.0, r - 1.0);
  return grad;
}

ZForm feasible_point_from_cut(const Graph& g, const Cut& s, double c) {
  if (s.universe() != g.num_vertices()) throw DomainError("cut universe does not match graph");
  if (!is_c_balanced(g, s, c))
    throw BalanceError("cut with " + std::to_string(s.size()) + " of " + std::to_string(g.num_vertices()) +
                       " vertices is not " + std::to_string(c) + "-balanced");
  return ZForm::from_matrix(cut_z(s));
}

ZForm linear_subproblem(const Eigen::MatrixXd& grad, const Graph& g, double c, double p, double inner_tol) {
  const int n = g.num_vertices();
  if (grad.rows() != n || grad.cols() != n) throw DomainError("gradient size does not match graph");
  if (!(p > 0.0 && p <= 2.0)) throw DomainError("exponent p must lie in (0, 2]");
  require_balance_feasible(n, c);
  const ZRegion region{n, p, c};
  const Eigen::MatrixXd interior = interior_point(region);
  LinearSolveOptions lopts;
  lopts.tol = inner_tol;
  auto solved = minimize_linear(grad, region, interior, interior, lopts);
  return ZForm::from_matrix(std::move(solved.z), {.psd = 1e-6});
}

double linearization_improvement(const Graph& g, double c, double p, const Eigen::MatrixXd& z,
                                 const ConcaveOptions& opts) {
  const ZRegion region{g.num_vertices(), p, c};
  const Eigen::MatrixXd interior = interior_point(region);
  LinearSolveOptions lopts;
  lopts.tol = opts.inner_tol;
  lopts.max_iter = opts.max_iter;
  const auto step = minimize_linear(objective_z_gradient(g, z, p, opts.gradient_floor), region, z, interior, lopts);
  return objective_z(g, z, p) - objective_z(g, step.z, p);
}

ConcaveResult solve_concave(const Graph& g, double c, double p, const ConcaveOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  opts.validate();
  if (!(p > 0.0 && p < 2.0)) throw DomainError("concave solver needs 0 < p < 2, got " + std::to_string(p));
  const int n = g.num_vertices();
  if (n > kConcaveVertexCap)
    throw CapError("concave solver supports at most " + std::to_string(kConcaveVertexCap) + " vertices");
  require_balance_feasible(n, c);
  const ZRegion region{n, p, c};
  const Eigen::MatrixXd interior = interior_point(region);

  std::vector<Eigen::MatrixXd> starts;
  for (const Cut& s : seed_cuts(g, c, opts.starts, opts.seed)) starts.push_back(cut_z(s));
  if (opts.sdp_start) {
    SdpOptions sopts;
    sopts.tol = opts.inner_tol;
    sopts.max_iter = opts.max_iter;
    sopts.seed = opts.seed;
    const auto sdp = solve_sdp(g, c, sopts);
    starts.push_back(z_from_gram(sdp.gram).matrix());
  }

  std::vector<SlpRun> runs(starts.size());
  const int threads = std::max(1, opts.threads);
  for (std::size_t base = 0; base < starts.size(); base += static_cast<std::size_t>(threads)) {
    std::vector<std::future<SlpRun>> batch;
    const std::size_t end = std::min(starts.size(), base + static_cast<std::size_t>(threads));
    for (std::size_t i = base; i < end; ++i)
      batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                 [&, i] { return successive_linearization(g, region, starts[i], interior, opts); }));
    for (std::size_t i = base; i < end; ++i) runs[i] = batch[i - base].get();
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value < runs[best].value) best = i;

  ConcaveResult out{ZForm::from_matrix(runs[best].z, {.psd = 1e-6}), {}};
  auto& rep = out.report;
  rep.value = runs[best].value;
  Tolerances check_tol;
  check_tol.triangle = std::max(check_tol.triangle, opts.inner_tol);
  check_tol.spread = std::max(check_tol.spread, opts.inner_tol);
  rep.residuals = check_feasibility(out.z, RelaxationParams(p, c), check_tol);
  for (const auto& r : runs) {
    rep.iterations += r.iterations;
    rep.outer_iterations += r.outer;
  }
  rep.start_value = objective_z(g, starts[best], p);
  rep.best_start = static_cast<int>(best);
  rep.num_starts = static_cast<int>(starts.size());
  rep.certificate_gap = runs[best].last_gap;
  rep.converged = runs[best].outer < opts.max_outer;
  rep.seed = opts.seed;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

double grid_oracle_n3(const Graph& g, double c, double p, double resolution) {
  if (!(resolution > 0.0)) throw DomainError("grid resolution must be positive");
  if (g.num_vertices() != 3) throw DomainError("grid oracle needs exactly 3 vertices");
  if (!(p > 0.0)) throw DomainError("exponent p must be positive");
  const double r = p / 2.0;
  const double floor = z_spread_bound(3, c);
  const int steps = static_cast<int>(std::floor(2.0 / resolution + 1e-9));
  std::vector<double> grid;
  for (int k = 0; k <= steps; ++k) grid.push_back(k * resolution);
  if (grid.back() < 2.0 - 1e-12) grid.push_back(2.0);
  std::vector<double> powered(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) powered[k] = std::pow(grid[k], r);

  const bool e01 = g.has_edge(0, 1), e02 = g.has_edge(0, 2), e12 = g.has_edge(1, 2);
  constexpr double kSlack = 1e-12;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = 0; b < grid.size(); ++b)
      for (std::size_t d = 0; d < grid.size(); ++d) {
        const double z01 = grid[a], z02 = grid[b], z12 = grid[d];
        if (z01 + z02 + z12 < floor - kSlack) continue;
        const double q01 = powered[a], q02 = powered[b], q12 = powered[d];
        if (q01 > q02 + q12 + kSlack || q02 > q01 + q12 + kSlack || q12 > q01 + q02 + kSlack) continue;
        double value = 0.0;
        if (e01) value += std::pow(z01 / 2.0, r);
        if (e02) value += std::pow(z02 / 2.0, r);
        if (e12) value += std::pow(z12 / 2.0, r);
        if (value >= best) continue;
        Eigen::Matrix3d x;
        x << 1.0, 1.0 - z01, 1.0 - z02, 1.0 - z01, 1.0, 1.0 - z12, 1.0 - z02, 1.0 - z12, 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig;
        eig.computeDirect(x, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-9) continue;
        best = value;
      }
  if (!std::isfinite(best)) throw InfeasibleBalanceError("no grid point satisfies the constraints");
  return best;
}

}  // namespace sepkit
