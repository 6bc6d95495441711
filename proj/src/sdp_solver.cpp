#include "sepkit/sdp_solver.hpp"

#include <chrono>

namespace sepkit {

void SdpOptions::validate() const {
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (max_iter <= 0) throw DomainError("max_iter must be positive");
}

double sdp_objective(const Graph& g, const Eigen::MatrixXd& z) {
  double total = 0.0;
  for (const auto& [a, b] : g.edges()) total += z(a, b);
  return 0.5 * total;
}

std::vector<TriangleViolation> violated_triangles(const GramForm& x, double tol) {
  const int n = x.size();
  Eigen::MatrixXd sq = 2.0 * (Eigen::MatrixXd::Ones(n, n) - x.matrix());
  sq.diagonal().setZero();
  return violated_triangles(sq, 1.0, tol);
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

}  // namespace

SdpResult solve_sdp(const Graph& g, double c, const SdpOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  opts.validate();
  const int n = g.num_vertices();
  if (n > kSdpVertexCap) throw CapError("SDP solver supports at most " + std::to_string(kSdpVertexCap) + " vertices");
  require_balance_feasible(n, c);
  const ZRegion region{n, 2.0, c};
  const RelaxationParams params(2.0, std::min(c, 0.5));
  Tolerances check_tol;
  check_tol.triangle = std::max(check_tol.triangle, opts.tol);
  check_tol.spread = std::max(check_tol.spread, opts.tol);

  Eigen::MatrixXd warm;
  if (opts.warm_start == WarmStart::kCut && n <= opts.cut_warm_start_cap) {
    warm = cut_z(exact_balanced_separator(g, c, opts.cut_warm_start_cap).cut);
  } else {
    warm = Eigen::MatrixXd::Ones(n, n);
    warm.diagonal().setZero();
  }
  const Eigen::MatrixXd interior = interior_point(region);

  // Candidates are compared on objective among feasible points only.
  std::optional<Eigen::MatrixXd> best;
  double best_value = 0.0;
  auto consider = [&](const Eigen::MatrixXd& z) {
    const auto zf = ZForm::from_matrix(z, {.psd = 1e-6});
    if (!check_feasibility(zf, params, check_tol).feasible) return;
    const double v = sdp_objective(g, z);
    if (!best || v < best_value) {
      best = z;
      best_value = v;
    }
  };
  consider(warm);
  if (opts.initial_point) consider(z_from_gram(*opts.initial_point).matrix());
  const double start_value = best ? best_value : sdp_objective(g, warm);

  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [a, b] : g.edges()) weights(a, b) = weights(b, a) = 0.5;
  LinearSolveOptions lopts;
  lopts.tol = opts.tol;
  lopts.max_iter = opts.max_iter;
  lopts.cut_batch = opts.triangle_batch;
  const auto solved = minimize_linear(weights, region, best ? *best : warm, interior, lopts);
  consider(solved.z);
  if (!best) throw NonConvergedError("SDP solver found no feasible point within the iteration cap", solved.z);

  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(n, n) - *best;
  x.diagonal().setOnes();
  SdpResult out{GramForm::from_matrix(std::move(x), {.psd = 1e-6}), {}};
  auto& rep = out.report;
  rep.value = best_value;
  rep.residuals = check_feasibility(ZForm::from_matrix(*best, {.psd = 1e-6}), params, check_tol);
  rep.iterations = solved.stats.iterations;
  rep.converged = solved.stats.converged;
  rep.seed = opts.seed;
  rep.start_value = start_value;
  rep.active_cuts = solved.stats.active_cuts;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace sepkit
