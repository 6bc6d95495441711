#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sepkit/concave_solver.hpp"
#include "sepkit/embedding.hpp"
#include "sepkit/graph.hpp"
#include "sepkit/rng.hpp"
#include "sepkit/sdp_solver.hpp"

namespace sepkit {

struct RoundingParams {
  // Separation target, in ||.||^p units.
  double delta = 0.0;
  double sigma = 1.0;
  double c_prime = 0.0625;
  double b_const = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SeparatedSets {
  std::vector<Vertex> s_side;
  std::vector<Vertex> t_side;
};

enum class SetFindOutcome {
  kSuccess,
  // |S'| or |T'| at most 2c'n after the median split.
  kHalted,
  // Pair deletion left a side smaller than c'n.
  kDepleted,
};

struct SetFindResult {
  SetFindOutcome outcome = SetFindOutcome::kHalted;
  SeparatedSets sets;
  std::vector<double> direction;
  double median = 0.0;
  double margin = 0.0;
  std::size_t s_candidates = 0;
  std::size_t t_candidates = 0;
  std::size_t deleted_pairs = 0;
  bool success() const noexcept { return outcome == SetFindOutcome::kSuccess; }
};

// b * (ln n)^{-(1 + p/2)/3}. n is real-valued so the formula can be probed at
// non-integer points; n < 2 is a DomainError.
double delta_target(double n, double p, double b = 1.0);

// Random-direction split with a sigma/(2 sqrt d) margin around the median
// projection, then greedy deletion of cross pairs with ||v_s - v_t||^p <= delta.
// For even n the median is the midpoint of the two central projections.
SetFindResult modified_set_find(const Embedding& e, double p, const RoundingParams& params, Rng& rng);
// Same, along a caller-chosen direction (normalised internally).
SetFindResult modified_set_find(const Embedding& e, double p, const RoundingParams& params,
                                std::span<const double> direction);

struct SeparationCheck {
  bool separated = true;
  // +inf when either side is empty.
  double min_distance_p = std::numeric_limits<double>::infinity();
  std::optional<std::pair<Vertex, Vertex>> worst_pair;
};

SeparationCheck check_separated(const Embedding& e, std::span<const Vertex> s_side, std::span<const Vertex> t_side,
                                double p, double delta);

struct CutProduction {
  Cut cut;
  double radius = 0.0;
  // Weighted distance from the S side; +inf when unreachable.
  std::vector<double> distance;
};

// Edge weights ||v_i - v_j||^p, shortest-path distance from the S side, and
// V_r = {v : dist(v) <= r} for r uniform in [0, delta).
CutProduction produce_cut(const Graph& g, const Embedding& e, double p, const SeparatedSets& sep, double delta, Rng& rng);
CutProduction produce_cut_at_radius(const Graph& g, const Embedding& e, double p, const SeparatedSets& sep,
                                    double radius);

struct PipelineOptions {
  SdpOptions sdp;
  ConcaveOptions concave;
  // nullopt: delta_target(n, p, b_const).
  std::optional<double> delta;
  double sigma = 1.0;
  // nullopt: c/4.
  std::optional<double> c_prime;
  double b_const = 1.0;
  int retries = 64;
  std::uint64_t seed = 0;
  int exact_cap = kDefaultBruteForceCap;
};

struct PipelineReport {
  bool success = false;
  double relaxation_value = 0.0;
  std::optional<std::size_t> exact_value;
  std::optional<Cut> cut;
  std::size_t cut_size = 0;
  // min(|V_r|, n - |V_r|) / n
  double balance = 0.0;
  // cut_size / max(relaxation_value, exact_value)
  double ratio = 0.0;
  int attempts = 0;
  double delta = 0.0;
  double c_prime = 0.0;
  double radius = 0.0;
  std::optional<SeparatedSets> sets;
  bool separated = false;
  bool t_side_excluded = false;
  bool s_side_included = false;
  SolveReport solve;
  FeasibilityReport embedding_residuals;
};

// Solve (p = 2: SDP, otherwise the concave program), factor, round.
PipelineReport pipeline(const Graph& g, double c, double p, const PipelineOptions& opts = {});
// Rounding half of the pipeline for an embedding obtained elsewhere.
PipelineReport round_embedding(const Graph& g, const Embedding& e, double c, double p, double relaxation_value,
                               const PipelineOptions& opts = {});

struct ProjectionEstimate {
  double empirical_low = 0.0;   // Pr{|<v,u>| <= x l / sqrt d}
  double empirical_high = 0.0;  // Pr{|<v,u>| >= x l / sqrt d}
  double bound_low = 0.0;       // 3x
  double bound_high = 0.0;      // exp(-x^2/4)
  bool low_applicable = false;  // 0 <= x < 1
  bool high_applicable = false; // x <= sqrt(d)/4
  std::size_t samples = 0;
};

// Monte-Carlo check of the random-projection tail bounds for a fixed vector of
// length l in R^d. samples must be at least 10^4.
ProjectionEstimate gaussian_projection_test(int d, double l, double x, std::size_t samples, std::uint64_t seed);

}  // namespace sepkit
