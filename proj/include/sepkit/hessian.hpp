#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace sepkit {

// f(x, y) = (x^{1/q} + y^{1/q})^q, the function whose hypograph is one z-form
// triangle constraint with q = 2/p.
double pair_bound(double x, double y, double q);

struct HessianSample {
  double x = 0.0, y = 0.0, q = 0.0;
  Eigen::Matrix2d h;
  // Largest eigenvalue, evaluated in extended precision. f is 1-homogeneous,
  // so H (x, y)^T = 0 and this is 0 up to rounding.
  double max_eigenvalue = 0.0;
};

// Closed-form second partials of f:
//   f_xx = -((q-1)/q) (1 + y^{1/q}/x^{1/q})^{q-2} y^{1/q} / x^{(q+1)/q}
//   f_yy = -((q-1)/q) (1 + x^{1/q}/y^{1/q})^{q-2} x^{1/q} / y^{(q+1)/q}
//   f_xy =  ((q-1)/q) (1/x^{1/q} + 1/y^{1/q})^{q-2} / (x^{1/q} y^{1/q})
// Requires x, y > 0 and q > 1.
HessianSample hessian_f(double x, double y, double q);

// -((q-1)/q) (x^{1/q} + y^{1/q})^{q-2} (alpha y - beta x)^2 / (xy)^{(2q-1)/q},
// which equals [alpha beta] H [alpha beta]^T.
double hessian_quadratic_form(double x, double y, double q, double alpha, double beta);

struct ConcavityWitness {
  double x, y, alpha, beta;
  std::string check;
};

struct ConcavityReport {
  double q = 0.0;
  std::size_t samples = 0;
  double max_eigenvalue = -std::numeric_limits<double>::infinity();
  double max_fd_rel_error = 0.0;
  double max_form_rel_error = 0.0;
  bool passed = true;
  std::optional<ConcavityWitness> witness;
};

struct ConcavityThresholds {
  double eigenvalue = 1e-8;
  double finite_difference = 1e-4;
  double quadratic_form = 1e-6;
};

// Samples (x, y) uniformly in (0, 2]^2 and checks, for each point: the largest
// Hessian eigenvalue is <= 1e-8; the closed form agrees with central finite
// differences of f; the factored quadratic form agrees with alpha' H alpha for
// a random direction. q <= 1 is a DomainError.
ConcavityReport check_concavity(double q, std::size_t samples, std::uint64_t seed,
                                const ConcavityThresholds& thresholds = {});

}  // namespace sepkit
