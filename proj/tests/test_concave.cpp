#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "sepkit/concave_solver.hpp"
#include "sepkit/errors.hpp"

using namespace sepkit;
using doctest::Approx;

namespace {

// Optimum of the n=3 relaxation for K3 and P3 at p=1: both sit on the spread
// boundary sum z = 2c(1-c)n^2 = 27/8. For K3 the minimiser puts the spread on
// two pairs (z = 27/16 each, third 0); objective 2 sqrt(27/32).
const double kK3P1 = 2.0 * std::sqrt(27.0 / 32.0);

Tolerances loose() {
  Tolerances tol;
  tol.unit = 1e-6;
  tol.triangle = 1e-5;
  tol.psd = 1e-6;
  tol.spread = 1e-5;
  return tol;
}

}  // namespace

TEST_CASE("solve_concave examples") {
  CHECK(solve_concave(corpus::cycle(4), 0.25, 1.0).report.value <= 2.0 + 1e-5);
  CHECK(solve_concave(corpus::complete(4), 0.25, 1.0).report.value <= 4.0 + 1e-5);
  const Graph k3 = corpus::complete(3);
  const double grid = grid_oracle_n3(k3, 0.25, 1.0, 0.01);
  const double v = solve_concave(k3, 0.25, 1.0).report.value;
  CHECK(std::abs(v - grid) <= 0.01 * 3);
  CHECK(v == Approx(kK3P1).epsilon(1e-4));
}

TEST_CASE("solve_concave output is feasible, sound and locally minimal") {
  for (double p : {0.5, 1.0, 1.5}) {
    for (const char* which : {"C6", "K33", "G(8,0.5)#1"}) {
      const Graph g = [&] {
        for (auto& [name, graph] : corpus::fixed_corpus())
          if (name == which) return graph;
        FAIL("missing corpus graph");
        return corpus::cycle(3);
      }();
      CAPTURE(which);
      CAPTURE(p);
      ConcaveOptions opts;
      const auto r = solve_concave(g, 0.25, p, opts);
      CHECK(check_feasibility(r.z, RelaxationParams(p, 0.25), loose()).feasible);
      CHECK(r.report.value <= corpus::brute_force_alpha(g, 0.25) + 1e-5);
      CHECK(r.report.value <= r.report.start_value + 1e-9);
      CHECK(r.report.value == Approx(objective_z(g, r.z, p)).epsilon(1e-9));
      CHECK(linearization_improvement(g, 0.25, p, r.z.matrix(), opts) < opts.inner_tol * 10);
    }
  }
}

TEST_CASE("solve_concave is deterministic and thread-count independent") {
  const Graph g = corpus::gnp(8, 0.5, 9);
  ConcaveOptions opts;
  opts.seed = 5;
  const auto a = solve_concave(g, 0.25, 1.0, opts);
  const auto b = solve_concave(g, 0.25, 1.0, opts);
  opts.threads = 2;
  const auto c = solve_concave(g, 0.25, 1.0, opts);
  CHECK(a.report.value == b.report.value);
  CHECK(a.z.matrix() == b.z.matrix());
  CHECK(a.report.value == c.report.value);
}

TEST_CASE("solve_concave errors") {
  CHECK_THROWS_AS(solve_concave(corpus::cycle(4), 0.25, 2.0), DomainError);
  CHECK_THROWS_AS(solve_concave(corpus::cycle(4), 0.25, 0.0), DomainError);
  CHECK_THROWS_AS(solve_concave(corpus::cycle(25), 0.25, 1.0), CapError);
  CHECK_THROWS_AS(solve_concave(corpus::path(2), 0.6, 1.0), InfeasibleBalanceError);
  ConcaveOptions bad;
  bad.starts = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("feasible_point_from_cut") {
  const Graph c4 = corpus::cycle(4);
  const ZForm z = feasible_point_from_cut(c4, Cut(4, {0, 1}), 0.25);
  CHECK(z.matrix()(0, 1) == 0.0);
  CHECK(z.matrix()(2, 3) == 0.0);
  CHECK(z.matrix()(0, 2) == 2.0);
  CHECK(z.matrix()(1, 3) == 2.0);
  CHECK(objective_z(c4, z, 1.0) == 2.0);

  const Graph edge(2, {{0, 1}});
  const ZForm z2 = feasible_point_from_cut(edge, Cut(2, {0}), 0.25);
  CHECK(z2.matrix()(0, 1) == 2.0);
  CHECK(objective_z(edge, z2, 1.0) == 1.0);

  CHECK_THROWS_AS(feasible_point_from_cut(c4, Cut(4, {}), 0.25), BalanceError);
}

TEST_CASE("cut points give the cut size at every exponent") {
  for (const auto& [name, g] : corpus::fixed_corpus()) {
    const auto best = exact_balanced_separator(g, 0.25);
    const ZForm z = feasible_point_from_cut(g, best.cut, 0.25);
    for (double p : {0.5, 1.0, 1.5, 2.0}) CHECK(objective_z(g, z, p) == static_cast<double>(best.value));
  }
}

TEST_CASE("linear_subproblem on two vertices") {
  const Graph edge(2, {{0, 1}});
  Eigen::MatrixXd grad(2, 2);
  // Spread forces z01 >= 2c(1-c) n^2 = 1.5 at c = 1/4.
  grad << 0, 1, 1, 0;
  CHECK(linear_subproblem(grad, edge, 0.25, 1.0).matrix()(0, 1) == Approx(1.5).epsilon(1e-5));
  grad << 0, -1, -1, 0;
  CHECK(linear_subproblem(grad, edge, 0.25, 1.0).matrix()(0, 1) == Approx(2.0).epsilon(1e-5));
  grad.setZero();
  const ZForm any = linear_subproblem(grad, edge, 0.25, 1.0);
  CHECK(any.matrix()(0, 1) >= 1.5 - 1e-6);
  CHECK(any.matrix()(0, 1) <= 2.0 + 1e-6);
}

TEST_CASE("linear_subproblem returns feasible points on larger instances") {
  const Graph g = corpus::cycle(6);
  Eigen::MatrixXd grad = Eigen::MatrixXd::Ones(6, 6);
  grad.diagonal().setZero();
  for (double p : {0.5, 1.5}) {
    const ZForm z = linear_subproblem(grad, g, 0.25, p);
    CHECK(check_feasibility(z, RelaxationParams(p, 0.25), loose()).feasible);
    // Uniform positive weights push the spread onto its lower bound.
    double total = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) total += z.matrix()(i, j);
    CHECK(total == Approx(z_spread_bound(6, 0.25)).epsilon(1e-4));
  }
}

TEST_CASE("grid_oracle_n3") {
  CHECK(grid_oracle_n3(Graph(3, {}), 0.25, 1.0) == 0.0);
  CHECK(grid_oracle_n3(corpus::complete(3), 0.25, 1.0, 0.01) >= kK3P1 - 1e-12);
  CHECK(grid_oracle_n3(corpus::complete(3), 0.25, 1.0, 0.01) <= kK3P1 + 0.03);
  CHECK(std::abs(grid_oracle_n3(corpus::complete(3), 0.25, 2.0) - 1.6875) <= 0.06);
  CHECK_THROWS_AS(grid_oracle_n3(corpus::complete(3), 0.25, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(grid_oracle_n3(corpus::cycle(4), 0.25, 1.0), DomainError);
}

TEST_CASE("objective gradient respects the floor") {
  const Graph edge(2, {{0, 1}});
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
  const Eigen::MatrixXd grad = objective_z_gradient(edge, z, 1.0, 1e-4);
  CHECK(std::isfinite(grad(0, 1)));
  CHECK(grad(0, 1) > 0.0);
  CHECK(grad(0, 0) == 0.0);
}
