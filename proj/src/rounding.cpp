#include "sepkit/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "sepkit/errors.hpp"
#include "sepkit/kernels.hpp"

namespace sepkit {

namespace {

enum Stream : std::uint64_t {
  kSolveStream = 1,
  kDirectionStream = 2,
  kRadiusStream = 3,
  kProjectionStream = 4,
};

double distance_p(const Embedding& e, Vertex a, Vertex b, double p) {
  return std::pow(kernels::squared_distance(e.vector(a), e.vector(b)), p / 2.0);
}

}  // namespace

std::vector<double> random_unit_vector(int d, Rng& rng) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> u(static_cast<std::size_t>(d));
  double norm2 = 0.0;
  while (norm2 == 0.0) {
    for (double& x : u) x = normal(rng);
    norm2 = kernels::dot(u, u);
  }
  // Division rather than multiplication by the inverse keeps d = 1 exactly +-1.
  const double norm = std::sqrt(norm2);
  for (double& x : u) x /= norm;
  return u;
}

void RoundingParams::validate() const {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(c_prime > 0.0 && c_prime < 0.5)) throw DomainError("c' must lie in (0, 1/2)");
  if (!(b_const > 0.0)) throw DomainError("b must be positive");
}

double delta_target(double n, double p, double b) {
  if (!(n >= 2.0)) throw DomainError("delta_target needs n >= 2");
  if (!(p > 0.0)) throw DomainError("delta_target needs p > 0");
  if (!(b > 0.0)) throw DomainError("delta_target needs b > 0");
  return b * std::pow(std::log(n), -(1.0 + p / 2.0) / 3.0);
}

SetFindResult modified_set_find(const Embedding& e, double p, const RoundingParams& params, Rng& rng) {
  const auto u = random_unit_vector(e.dim(), rng);
  return modified_set_find(e, p, params, u);
}

SetFindResult modified_set_find(const Embedding& e, double p, const RoundingParams& params,
                                std::span<const double> direction) {
  params.validate();
  const int n = e.size();
  const int d = e.dim();
  if (static_cast<int>(direction.size()) != d) throw DomainError("direction has the wrong dimension");
  if (n < 2) throw DomainError("set-find needs at least two vectors");

  SetFindResult out;
  out.direction.assign(direction.begin(), direction.end());
  const double len = std::sqrt(kernels::dot(out.direction, out.direction));
  if (!(len > 0.0) || !std::isfinite(len)) throw DomainError("direction must be a nonzero finite vector");
  for (double& x : out.direction) x /= len;

  std::vector<double> proj(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) proj[i] = kernels::dot(e.vector(i), out.direction);
  std::vector<double> sorted = proj;
  std::sort(sorted.begin(), sorted.end());
  out.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  out.margin = params.sigma / (2.0 * std::sqrt(static_cast<double>(d)));

  std::vector<Vertex> s_prime, t_prime;
  for (int i = 0; i < n; ++i) {
    if (proj[i] >= out.median + out.margin) s_prime.push_back(i);
    else if (proj[i] <= out.median - out.margin) t_prime.push_back(i);
  }
  out.s_candidates = s_prime.size();
  out.t_candidates = t_prime.size();
  const double halt_at = 2.0 * params.c_prime * n;
  if (static_cast<double>(s_prime.size()) <= halt_at || static_cast<double>(t_prime.size()) <= halt_at) {
    out.outcome = SetFindOutcome::kHalted;
    return out;
  }

  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (Vertex s : s_prime) {
    for (Vertex t : t_prime) {
      if (removed[t]) continue;
      if (distance_p(e, s, t, p) <= params.delta) {
        removed[s] = removed[t] = 1;
        ++out.deleted_pairs;
        break;
      }
    }
  }
  for (Vertex s : s_prime)
    if (!removed[s]) out.sets.s_side.push_back(s);
  for (Vertex t : t_prime)
    if (!removed[t]) out.sets.t_side.push_back(t);

  const double keep_at = params.c_prime * n;
  const bool big_enough = static_cast<double>(out.sets.s_side.size()) >= keep_at &&
                          static_cast<double>(out.sets.t_side.size()) >= keep_at;
  out.outcome = big_enough ? SetFindOutcome::kSuccess : SetFindOutcome::kDepleted;
  return out;
}

SeparationCheck check_separated(const Embedding& e, std::span<const Vertex> s_side, std::span<const Vertex> t_side,
                                double p, double delta) {
  SeparationCheck out;
  for (Vertex s : s_side) {
    for (Vertex t : t_side) {
      const double dist = distance_p(e, s, t, p);
      if (dist < out.min_distance_p) {
        out.min_distance_p = dist;
        out.worst_pair = std::pair{s, t};
      }
    }
  }
  out.separated = !out.worst_pair || out.min_distance_p >= delta;
  return out;
}

CutProduction produce_cut_at_radius(const Graph& g, const Embedding& e, double p, const SeparatedSets& sep,
                                    double radius) {
  const int n = g.num_vertices();
  if (e.size() != n) throw DomainError("embedding size does not match the graph");
  if (sep.s_side.empty() || sep.t_side.empty()) throw DomainError("both separated sets must be nonempty");

  CutProduction out{Cut(n, {}), radius, std::vector<double>(static_cast<std::size_t>(n),
                                                             std::numeric_limits<double>::infinity())};
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (Vertex s : sep.s_side) {
    out.distance[s] = 0.0;
    queue.emplace(0.0, s);
  }
  while (!queue.empty()) {
    auto [dist, v] = queue.top();
    queue.pop();
    if (dist > out.distance[v]) continue;
    for (Vertex w : g.neighbors(v)) {
      const double next = dist + distance_p(e, v, w, p);
      if (next < out.distance[w]) {
        out.distance[w] = next;
        queue.emplace(next, w);
      }
    }
  }
  std::vector<Vertex> members;
  for (Vertex v = 0; v < n; ++v)
    if (out.distance[v] <= radius) members.push_back(v);
  out.cut = Cut(n, std::move(members));
  return out;
}

CutProduction produce_cut(const Graph& g, const Embedding& e, double p, const SeparatedSets& sep, double delta,
                          Rng& rng) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  std::uniform_real_distribution<double> radius(0.0, delta);
  return produce_cut_at_radius(g, e, p, sep, radius(rng));
}

PipelineReport round_embedding(const Graph& g, const Embedding& e, double c, double p, double relaxation_value,
                               const PipelineOptions& opts) {
  const int n = g.num_vertices();
  require_balance_feasible(n, c);
  const RelaxationParams relax(p, c);
  if (e.size() != n) throw DomainError("embedding size does not match the graph");
  if (opts.retries < 1) throw DomainError("retries must be at least 1");

  RoundingParams params;
  params.delta = opts.delta ? *opts.delta : delta_target(n, p, opts.b_const);
  params.sigma = opts.sigma;
  params.c_prime = opts.c_prime ? *opts.c_prime : c / 4.0;
  params.b_const = opts.b_const;
  params.seed = opts.seed;
  params.validate();

  PipelineReport report;
  report.relaxation_value = relaxation_value;
  report.delta = params.delta;
  report.c_prime = params.c_prime;
  report.embedding_residuals = check_feasibility(e, relax);
  if (n <= opts.exact_cap) report.exact_value = exact_balanced_separator(g, c, opts.exact_cap).value;

  for (int attempt = 0; attempt < opts.retries; ++attempt) {
    report.attempts = attempt + 1;
    Rng direction_rng(derive_seed(opts.seed, kDirectionStream, static_cast<std::uint64_t>(attempt)));
    SetFindResult found = modified_set_find(e, p, params, direction_rng);
    if (!found.success()) continue;

    Rng radius_rng(derive_seed(opts.seed, kRadiusStream, static_cast<std::uint64_t>(attempt)));
    CutProduction produced = produce_cut(g, e, p, found.sets, params.delta, radius_rng);
    const Cut& cut = produced.cut;

    report.success = true;
    report.radius = produced.radius;
    report.separated = check_separated(e, found.sets.s_side, found.sets.t_side, p, params.delta).separated;
    report.s_side_included = std::ranges::all_of(found.sets.s_side, [&](Vertex v) { return cut.contains(v); });
    report.t_side_excluded = std::ranges::none_of(found.sets.t_side, [&](Vertex v) { return cut.contains(v); });
    report.cut_size = cut_size(g, cut);
    const std::size_t small = std::min(cut.size(), static_cast<std::size_t>(n) - cut.size());
    report.balance = static_cast<double>(small) / n;
    const double reference =
        std::max(relaxation_value, report.exact_value ? static_cast<double>(*report.exact_value) : 0.0);
    if (reference > 0.0) report.ratio = static_cast<double>(report.cut_size) / reference;
    else report.ratio = report.cut_size == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    report.sets = std::move(found.sets);
    report.cut = cut;
    break;
  }
  return report;
}

PipelineReport pipeline(const Graph& g, double c, double p, const PipelineOptions& opts) {
  require_balance_feasible(g.num_vertices(), c);
  const RelaxationParams relax(p, c);

  GramForm gram = GramForm::from_matrix(Eigen::MatrixXd::Identity(1, 1));
  SolveReport solved;
  if (p == 2.0) {
    SdpOptions sdp = opts.sdp;
    sdp.seed = derive_seed(opts.seed, kSolveStream);
    auto result = solve_sdp(g, c, sdp);
    gram = std::move(result.gram);
    solved = result.report;
  } else {
    ConcaveOptions concave = opts.concave;
    concave.seed = derive_seed(opts.seed, kSolveStream);
    auto result = solve_concave(g, c, p, concave);
    gram = gram_from_z(result.z);
    solved = result.report;
  }
  const Embedding e = embedding_from_gram(gram);
  PipelineReport report = round_embedding(g, e, c, p, solved.value, opts);
  report.solve = solved;
  return report;
}

ProjectionEstimate gaussian_projection_test(int d, double l, double x, std::size_t samples, std::uint64_t seed) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (!(l > 0.0)) throw DomainError("length must be positive");
  if (!(x >= 0.0)) throw DomainError("x must be nonnegative");
  if (samples < 10000) throw DomainError("at least 10^4 samples are required");

  Rng rng(derive_seed(seed, kProjectionStream));
  std::vector<double> v = random_unit_vector(d, rng);
  for (double& t : v) t *= l;
  const double threshold = x * l / std::sqrt(static_cast<double>(d));

  std::size_t low = 0, high = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto u = random_unit_vector(d, rng);
    const double t = std::abs(kernels::dot(v, u));
    if (t <= threshold) ++low;
    if (t >= threshold) ++high;
  }
  ProjectionEstimate out;
  out.samples = samples;
  out.empirical_low = static_cast<double>(low) / samples;
  out.empirical_high = static_cast<double>(high) / samples;
  out.bound_low = 3.0 * x;
  out.bound_high = std::exp(-x * x / 4.0);
  out.low_applicable = x < 1.0;
  out.high_applicable = x > 0.0 && x <= std::sqrt(static_cast<double>(d)) / 4.0;
  return out;
}

}  // namespace sepkit
