#include <doctest.h>

#include <cmath>
#include <random>

#include "sepkit/errors.hpp"
#include "sepkit/hessian.hpp"

using namespace sepkit;
using doctest::Approx;

TEST_CASE("hessian_f at (1, 1) with q = 2") {
  const HessianSample h = hessian_f(1.0, 1.0, 2.0);
  CHECK(h.h(0, 0) == Approx(-0.5));
  CHECK(h.h(1, 1) == Approx(-0.5));
  CHECK(h.h(0, 1) == Approx(0.5));
  CHECK(h.h(1, 0) == Approx(0.5));
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h.h).eigenvalues();
  CHECK(ev(0) == Approx(-1.0));
  CHECK(ev(1) == Approx(0.0).scale(1.0));
}

TEST_CASE("hessian_f is symmetric in its arguments") {
  for (double x : {0.1, 0.7, 1.9}) {
    const HessianSample h = hessian_f(x, x, 2.0);
    CHECK(h.h(0, 0) == Approx(h.h(1, 1)));
    const HessianSample a = hessian_f(x, 1.3, 4.0 / 3.0), b = hessian_f(1.3, x, 4.0 / 3.0);
    CHECK(a.h(0, 0) == Approx(b.h(1, 1)));
    CHECK(a.h(0, 1) == Approx(b.h(1, 0)));
  }
}

TEST_CASE("hessian_f annihilates the radial direction") {
  // f is 1-homogeneous, so H (x, y)^T = 0.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int t = 0; t < 200; ++t) {
    const double x = u(rng), y = u(rng);
    for (double q : {4.0 / 3.0, 2.0, 4.0, 10.0}) {
      const HessianSample h = hessian_f(x, y, q);
      const Eigen::Vector2d r = h.h * Eigen::Vector2d(x, y);
      CHECK(r.norm() <= 1e-10 * (1.0 + h.h.norm()));
      CHECK(h.max_eigenvalue <= 1e-8);
    }
  }
}

TEST_CASE("factored quadratic form equals a'Ha") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  std::normal_distribution<double> n;
  for (int t = 0; t < 200; ++t) {
    const double x = u(rng), y = u(rng), a = n(rng), b = n(rng);
    for (double q : {4.0 / 3.0, 2.0, 4.0}) {
      const Eigen::Vector2d v(a, b);
      CHECK(hessian_quadratic_form(x, y, q, a, b) == Approx(v.dot(hessian_f(x, y, q).h * v)).epsilon(1e-9));
    }
  }
}

TEST_CASE("hessian_f domain") {
  CHECK_THROWS_AS(hessian_f(1.0, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(hessian_f(-1.0, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(hessian_f(1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("check_concavity") {
  for (double q : {2.0, 4.0 / 3.0}) {
    const ConcavityReport r = check_concavity(q, 1000, 8);
    CHECK(r.passed);
    CHECK(r.samples == 1000);
    CHECK(r.max_eigenvalue <= 1e-8);
    CHECK(r.max_fd_rel_error <= 1e-4);
    CHECK(r.max_form_rel_error <= 1e-6);
    CHECK_FALSE(r.witness);
  }
  CHECK_THROWS_AS(check_concavity(0.5, 10, 1), DomainError);
}

TEST_CASE("check_concavity names a witness when a threshold is missed") {
  ConcavityThresholds strict;
  strict.finite_difference = 1e-30;
  const ConcavityReport r = check_concavity(2.0, 10, 1, strict);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness);
  CHECK(r.witness->check.find("finite") != std::string::npos);
}
