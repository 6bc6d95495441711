#include "sepkit/hessian.hpp"

#include <cmath>
#include <random>

#include "sepkit/errors.hpp"

namespace sepkit {

namespace {

using Real = long double;

void require_domain(double x, double y, double q) {
  if (!(q > 1.0)) throw DomainError("q = 2/p must exceed 1, got " + std::to_string(q));
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("second partials of f do not exist for x or y <= 0");
}

Real f_ext(Real x, Real y, Real q) { return std::pow(std::pow(x, 1 / q) + std::pow(y, 1 / q), q); }

struct ExtHessian {
  Real xx, yy, xy;
};

ExtHessian closed_form(Real x, Real y, Real q) {
  const Real a = std::pow(x, 1 / q), b = std::pow(y, 1 / q);
  const Real k = (q - 1) / q;
  return {-k * std::pow(1 + b / a, q - 2) * b / std::pow(x, (q + 1) / q),
          -k * std::pow(1 + a / b, q - 2) * a / std::pow(y, (q + 1) / q),
          k * std::pow(1 / a + 1 / b, q - 2) / (a * b)};
}

Real max_eigenvalue(const ExtHessian& h) {
  const Real half_trace = (h.xx + h.yy) / 2;
  const Real radius = std::hypot((h.xx - h.yy) / 2, h.xy);
  return half_trace + radius;
}

Real form_ext(Real x, Real y, Real q, Real alpha, Real beta) {
  const Real a = std::pow(x, 1 / q), b = std::pow(y, 1 / q);
  const Real d = alpha * y - beta * x;
  return -((q - 1) / q) * std::pow(a + b, q - 2) * d * d / std::pow(x * y, (2 * q - 1) / q);
}

Real rel_error(Real got, Real want) {
  const Real scale = std::max(std::abs(want), std::abs(got));
  return scale == 0 ? 0 : std::abs(got - want) / scale;
}

}  // namespace

double pair_bound(double x, double y, double q) {
  return static_cast<double>(f_ext(x, y, q));
}

HessianSample hessian_f(double x, double y, double q) {
  require_domain(x, y, q);
  const auto h = closed_form(x, y, q);
  HessianSample s;
  s.x = x;
  s.y = y;
  s.q = q;
  s.h << static_cast<double>(h.xx), static_cast<double>(h.xy), static_cast<double>(h.xy), static_cast<double>(h.yy);
  s.max_eigenvalue = static_cast<double>(max_eigenvalue(h));
  return s;
}

double hessian_quadratic_form(double x, double y, double q, double alpha, double beta) {
  require_domain(x, y, q);
  return static_cast<double>(form_ext(x, y, q, alpha, beta));
}

ConcavityReport check_concavity(double q, std::size_t samples, std::uint64_t seed,
                                const ConcavityThresholds& thresholds) {
  if (!(q > 1.0)) throw DomainError("concavity check needs q = 2/p > 1, got " + std::to_string(q));
  ConcavityReport rep;
  rep.q = q;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  auto fail = [&](double x, double y, double alpha, double beta, const char* what) {
    if (rep.passed) rep.witness = ConcavityWitness{x, y, alpha, beta, what};
    rep.passed = false;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const double x = 2.0 * (1.0 - unit(rng));  // (0, 2]
    const double y = 2.0 * (1.0 - unit(rng));
    const double alpha = normal(rng), beta = normal(rng);
    const auto h = closed_form(x, y, q);

    const Real top = max_eigenvalue(h);
    rep.max_eigenvalue = std::max(rep.max_eigenvalue, static_cast<double>(top));
    if (top > thresholds.eigenvalue) fail(x, y, alpha, beta, "eigenvalue");

    // Central differences with per-coordinate relative steps.
    const Real hx = Real(1e-4) * x, hy = Real(1e-4) * y;
    const Real X = x, Y = y, Q = q;
    const Real f0 = f_ext(X, Y, Q);
    const Real fd_xx = (f_ext(X + hx, Y, Q) - 2 * f0 + f_ext(X - hx, Y, Q)) / (hx * hx);
    const Real fd_yy = (f_ext(X, Y + hy, Q) - 2 * f0 + f_ext(X, Y - hy, Q)) / (hy * hy);
    const Real fd_xy = (f_ext(X + hx, Y + hy, Q) - f_ext(X + hx, Y - hy, Q) - f_ext(X - hx, Y + hy, Q) +
                        f_ext(X - hx, Y - hy, Q)) /
                       (4 * hx * hy);
    const Real fd_err = std::max({rel_error(h.xx, fd_xx), rel_error(h.yy, fd_yy), rel_error(h.xy, fd_xy)});
    rep.max_fd_rel_error = std::max(rep.max_fd_rel_error, static_cast<double>(fd_err));
    if (fd_err > thresholds.finite_difference) fail(x, y, alpha, beta, "finite-difference");

    const Real quad = alpha * alpha * h.xx + beta * beta * h.yy + 2 * Real(alpha) * beta * h.xy;
    const Real form_err = rel_error(quad, form_ext(X, Y, Q, alpha, beta));
    rep.max_form_rel_error = std::max(rep.max_form_rel_error, static_cast<double>(form_err));
    if (form_err > thresholds.quadratic_form) fail(x, y, alpha, beta, "quadratic-form");
  }
  return rep;
}

}  // namespace sepkit
