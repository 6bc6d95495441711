#include "sepkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sepkit/concave_solver.hpp"
#include "sepkit/embedding.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/hessian.hpp"
#include "sepkit/rounding.hpp"
#include "sepkit/sdp_solver.hpp"

namespace sepkit {

namespace {

constexpr std::size_t kMaxReportedFailures = 5;

void record(SuiteResult& r, bool ok, const std::string& what) {
  ++r.checks;
  if (ok) return;
  r.passed = false;
  if (r.failures.size() < kMaxReportedFailures) r.failures.push_back(what);
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

Graph random_graph(int n, double density, Rng& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph cycle(int n) {
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path(int n) {
  std::vector<Graph::Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph complete(int n) {
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

double triangle_excess(const Eigen::MatrixXd& z, double r) {
  const int n = static_cast<int>(z.rows());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        if (i == j || j == k || i == k) continue;
        const double lhs = std::pow(std::max(z(i, k), 0.0), r);
        const double rhs = std::pow(std::max(z(i, j), 0.0), r) + std::pow(std::max(z(j, k), 0.0), r);
        worst = std::max(worst, lhs - rhs);
      }
  return worst;
}

double upper_sum(const Eigen::MatrixXd& z) {
  double s = 0.0;
  for (int i = 0; i < z.rows(); ++i)
    for (int j = i + 1; j < z.cols(); ++j) s += z(i, j);
  return s;
}

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

constexpr int kSuiteVertices = 6;
constexpr double kSuiteC = 0.25;
constexpr std::size_t kPairSamples = 1000;
constexpr double kSlack = 1e-9;
const double kExponents[] = {0.5, 1.0, 1.5};

SuiteResult concavity_suite(std::uint64_t seed) {
  SuiteResult r{"concavity"};
  double worst = 0.0;
  for (double p : kExponents) {
    Rng rng(derive_seed(seed, 11, static_cast<std::uint64_t>(p * 1000)));
    const Graph g = random_graph(kSuiteVertices, 0.5, rng);
    const ZRegion region{kSuiteVertices, p, kSuiteC};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < kPairSamples; ++s) {
      const Eigen::MatrixXd a = sample_feasible_z(region, rng), b = sample_feasible_z(region, rng);
      const double lambda = unit(rng);
      const double mixed = objective_z(g, lambda * a + (1.0 - lambda) * b, p);
      const double chord = lambda * objective_z(g, a, p) + (1.0 - lambda) * objective_z(g, b, p);
      worst = std::max(worst, chord - mixed);
      record(r, mixed >= chord - kSlack, "p=" + fmt(p) + ": f(mix)=" + fmt(mixed) + " < chord " + fmt(chord));
    }
  }
  r.metrics.emplace_back("max_chord_excess", worst);
  return r;
}

SuiteResult convexity_suite(std::uint64_t seed) {
  SuiteResult r{"convexity"};
  double worst_psd = 0.0, worst_triangle = 0.0, worst_spread = 0.0;
  for (double p : kExponents) {
    Rng rng(derive_seed(seed, 12, static_cast<std::uint64_t>(p * 1000)));
    const ZRegion region{kSuiteVertices, p, kSuiteC};
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(kSuiteVertices, kSuiteVertices);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < kPairSamples; ++s) {
      const Eigen::MatrixXd a = sample_feasible_z(region, rng), b = sample_feasible_z(region, rng);
      const double lambda = unit(rng);
      const Eigen::MatrixXd mix = lambda * a + (1.0 - lambda) * b;
      const double psd = -std::min(0.0, min_eig(ones - mix));
      const double tri = triangle_excess(mix, region.exponent());
      const double spread = std::max(0.0, region.spread_floor() - upper_sum(mix));
      worst_psd = std::max(worst_psd, psd);
      worst_triangle = std::max(worst_triangle, tri);
      worst_spread = std::max(worst_spread, spread);
      record(r, psd <= kSlack, "p=" + fmt(p) + ": J - Z loses PSD by " + fmt(psd));
      record(r, tri <= kSlack, "p=" + fmt(p) + ": triangle violated by " + fmt(tri));
      record(r, spread <= kSlack, "p=" + fmt(p) + ": spread short by " + fmt(spread));
    }
  }
  r.metrics.emplace_back("max_psd_violation", worst_psd);
  r.metrics.emplace_back("max_triangle_violation", worst_triangle);
  r.metrics.emplace_back("max_spread_violation", worst_spread);
  return r;
}

SuiteResult hessian_suite(std::uint64_t seed) {
  SuiteResult r{"hessian"};
  constexpr std::size_t kSamples = 100;
  for (double q : {4.0 / 3.0, 2.0, 4.0}) {
    const auto rep = check_concavity(q, kSamples, derive_seed(seed, 13, static_cast<std::uint64_t>(q * 1000)));
    r.checks += rep.samples;
    r.metrics.emplace_back("q=" + fmt(q) + " max_eigenvalue", rep.max_eigenvalue);
    r.metrics.emplace_back("q=" + fmt(q) + " max_fd_rel_error", rep.max_fd_rel_error);
    r.metrics.emplace_back("q=" + fmt(q) + " max_form_rel_error", rep.max_form_rel_error);
    if (!rep.passed) {
      r.passed = false;
      const auto& w = *rep.witness;
      r.failures.push_back("q=" + fmt(q) + ": " + w.check + " check failed at x=" + fmt(w.x) + ", y=" + fmt(w.y));
    }
  }
  return r;
}

SuiteResult gaussian_suite(std::uint64_t seed) {
  SuiteResult r{"gaussian"};
  constexpr std::size_t kSamples = 100000;
  auto slack = [](double bound) {
    const double b = std::clamp(bound, 0.0, 1.0);
    return 3.0 * std::sqrt(b * (1.0 - b) / static_cast<double>(kSamples));
  };
  for (int d : {10, 100}) {
    for (double x : {0.05, 0.1, 0.3}) {
      const auto est = gaussian_projection_test(d, 1.0, x, kSamples, derive_seed(seed, 14, d * 1000 + x * 100));
      record(r, est.empirical_low <= est.bound_low + slack(est.bound_low),
             "d=" + std::to_string(d) + " x=" + fmt(x) + ": low " + fmt(est.empirical_low) + " > " + fmt(est.bound_low));
      r.metrics.emplace_back("d=" + std::to_string(d) + " x=" + fmt(x) + " low", est.empirical_low);
    }
    for (double x : {1.0, 2.0, 3.0}) {
      const auto est = gaussian_projection_test(d, 1.0, x, kSamples, derive_seed(seed, 15, d * 1000 + x * 100));
      record(r, est.empirical_high <= est.bound_high + slack(est.bound_high),
             "d=" + std::to_string(d) + " x=" + fmt(x) + ": high " + fmt(est.empirical_high) + " > " +
                 fmt(est.bound_high));
      r.metrics.emplace_back("d=" + std::to_string(d) + " x=" + fmt(x) + " high", est.empirical_high);
    }
  }
  return r;
}

SuiteResult roundtrip_suite(std::uint64_t seed) {
  SuiteResult r{"roundtrip"};
  Rng rng(derive_seed(seed, 16));
  double worst_gram = 0.0, worst_objective = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 8;
    const int d = 1 + trial % n;
    RowMatrix v(n, d);
    for (int i = 0; i < n; ++i) {
      const auto u = random_unit_vector(d, rng);
      for (int k = 0; k < d; ++k) v(i, k) = u[k];
    }
    const Embedding e(v);
    const GramForm x = gram_from_embedding(e);
    const GramForm back = gram_from_embedding(embedding_from_gram(x));
    const double gram_err = (back.matrix() - x.matrix()).cwiseAbs().maxCoeff();
    worst_gram = std::max(worst_gram, gram_err);
    record(r, gram_err <= 1e-6, "gram roundtrip error " + fmt(gram_err) + " at n=" + std::to_string(n));

    const Graph g = random_graph(n, 0.5, rng);
    for (double p : {0.5, 1.0, 1.5, 2.0}) {
      const double err = std::abs(objective(g, e, p) - objective_z(g, z_from_gram(x), p));
      worst_objective = std::max(worst_objective, err);
      record(r, err <= 1e-8, "objective forms disagree by " + fmt(err));
    }

    std::bernoulli_distribution coin(0.5);
    std::vector<Vertex> side;
    for (int i = 0; i < n; ++i)
      if (coin(rng)) side.push_back(i);
    const GramForm cut_gram = gram_from_embedding(cut_to_embedding(g, Cut(n, side)));
    record(r, gram_from_z(z_from_gram(cut_gram)).matrix() == cut_gram.matrix(), "cut gram/z roundtrip not exact");
  }
  r.metrics.emplace_back("max_gram_error", worst_gram);
  r.metrics.emplace_back("max_objective_error", worst_objective);
  return r;
}

SuiteResult soundness_suite(std::uint64_t seed) {
  SuiteResult r{"soundness"};
  constexpr double kTol = 1e-5;
  const std::vector<std::pair<std::string, Graph>> corpus = {
      {"C4", cycle(4)}, {"C6", cycle(6)}, {"P5", path(5)}, {"K4", complete(4)}};
  for (const auto& [name, g] : corpus) {
    const int n = g.num_vertices();
    const auto exact = exact_balanced_separator(g, kSuiteC);
    for (const Cut& s : enumerate_balanced_cuts(g, kSuiteC)) {
      const Embedding e = cut_to_embedding(g, s);
      for (double p : {0.5, 1.0, 1.5, 2.0}) {
        const double err = std::abs(objective(g, e, p) - static_cast<double>(cut_size(g, s)));
        record(r, err <= 1e-9, name + ": cut objective off by " + fmt(err));
        record(r, check_feasibility(e, RelaxationParams(p, kSuiteC)).feasible, name + ": cut embedding infeasible");
      }
    }
    SdpOptions sopts;
    sopts.seed = derive_seed(seed, 17, static_cast<std::uint64_t>(n));
    const double sdp = solve_sdp(g, kSuiteC, sopts).report.value;
    record(r, sdp <= static_cast<double>(exact.value) + kTol, name + ": SDP value " + fmt(sdp) + " above optimum");
    ConcaveOptions copts;
    copts.seed = sopts.seed;
    const double concave = solve_concave(g, kSuiteC, 1.0, copts).report.value;
    record(r, concave <= static_cast<double>(exact.value) + kTol,
           name + ": p=1 value " + fmt(concave) + " above optimum");
    r.metrics.emplace_back(name + " exact", static_cast<double>(exact.value));
    r.metrics.emplace_back(name + " sdp", sdp);
    r.metrics.emplace_back(name + " p=1", concave);
  }
  return r;
}

}  // namespace

Eigen::MatrixXd sample_feasible_z(const ZRegion& region, Rng& rng) {
  const int n = region.n;
  const RelaxationParams params(region.p, region.c);
  std::uniform_int_distribution<int> dim_pick(1, std::min(n, 4));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const int d = dim_pick(rng);
    RowMatrix v(n, d);
    for (int i = 0; i < n; ++i) {
      const auto u = random_unit_vector(d, rng);
      for (int k = 0; k < d; ++k) v(i, k) = u[k];
    }
    const Embedding e(std::move(v));
    const ZForm z = z_from_gram(gram_from_embedding(e));
    if (check_feasibility(z, params).feasible) return z.matrix();
  }
  throw Error("no feasible sample found for n=" + std::to_string(n));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"concavity", "convexity", "hessian",
                                                 "gaussian",  "roundtrip", "soundness"};
  return names;
}

SuiteResult run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "concavity") return concavity_suite(seed);
  if (name == "convexity") return convexity_suite(seed);
  if (name == "hessian") return hessian_suite(seed);
  if (name == "gaussian") return gaussian_suite(seed);
  if (name == "roundtrip") return roundtrip_suite(seed);
  if (name == "soundness") return soundness_suite(seed);
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
  throw DomainError("unknown suite '" + std::string(name) + "'; known suites: " + known + ", all");
}

std::vector<SuiteResult> run_suites(std::string_view selector, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  if (selector == "all") {
    for (const auto& name : suite_names()) out.push_back(run_suite(name, seed));
  } else {
    out.push_back(run_suite(selector, seed));
  }
  return out;
}

}  // namespace sepkit
