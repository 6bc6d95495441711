#include "sepkit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <future>
#include <sstream>

#include "sepkit/errors.hpp"
#include "sepkit/json_io.hpp"
#include "sepkit/verify.hpp"

namespace sepkit {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json timing(Clock::time_point started, double solver_seconds = 0.0) {
  return {{"started_at", utc_now()},
          {"wall_seconds", std::chrono::duration<double>(Clock::now() - started).count()},
          {"solver_seconds", solver_seconds}};
}

json base_record(std::string_view command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"sepkit_version", kVersion}};
}

json residuals_json(const FeasibilityReport& r) {
  return {{"max_unit_violation", r.max_unit_violation},
          {"max_triangle_violation", r.max_triangle_violation},
          {"spread_slack", r.spread_slack},
          {"min_eigenvalue", r.min_eigenvalue},
          {"feasible", r.feasible}};
}

json solve_json(const SolveReport& r) {
  return {{"value", r.value},
          {"residuals", residuals_json(r.residuals)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"start_value", r.start_value},
          {"active_cuts", r.active_cuts},
          {"outer_iterations", r.outer_iterations},
          {"best_start", r.best_start},
          {"num_starts", r.num_starts},
          {"certificate_gap", r.certificate_gap},
          {"seed", r.seed}};
}

json graph_json(const std::string& path, const Graph& g) {
  return {{"path", path}, {"n", g.num_vertices()}, {"m", g.num_edges()}};
}

std::vector<Vertex> sorted(std::span<const Vertex> v) {
  std::vector<Vertex> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

json pipeline_json(const PipelineReport& r) {
  json out = {{"success", r.success},
              {"relaxation_value", r.relaxation_value},
              {"cut_members", r.cut ? json(sorted(r.cut->members())) : json(nullptr)},
              {"cut_size", r.success ? json(r.cut_size) : json(nullptr)},
              {"balance", r.success ? json(r.balance) : json(nullptr)},
              {"ratio", r.success ? finite_or_null(r.ratio) : json(nullptr)},
              {"attempts", r.attempts},
              {"delta", r.delta},
              {"c_prime", r.c_prime}};
  if (r.success) {
    out["radius"] = r.radius;
    out["s_side"] = r.sets->s_side;
    out["t_side"] = r.sets->t_side;
    out["separated"] = r.separated;
    out["s_side_included"] = r.s_side_included;
    out["t_side_excluded"] = r.t_side_excluded;
  }
  out["embedding_residuals"] = residuals_json(r.embedding_residuals);
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  return v.dump();
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("SEPKIT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (*end != '\0') throw DomainError(std::string("SEPKIT_SEED is not an unsigned integer: ") + env);
  return value;
}

CommandResult cmd_exact(const std::string& graph_path, double c, int cap) {
  const auto started = Clock::now();
  const Graph g = load_graph_file(graph_path);
  const auto best = exact_balanced_separator(g, c, cap);
  json rec = base_record("exact");
  rec["config"] = {{"graph", graph_json(graph_path, g)}, {"c", c}, {"cap", cap}};
  rec["exact_value"] = best.value;
  rec["cut_members"] = sorted(best.cut.members());
  rec["timing"] = timing(started);
  return {rec, kExitOk};
}

CommandResult cmd_solve(const SolveConfig& config) {
  const auto started = Clock::now();
  const Graph g = load_graph_file(config.graph_path);
  [[maybe_unused]] const RelaxationParams checked(config.p, config.c);
  json rec = base_record("solve");
  rec["config"] = {{"graph", graph_json(config.graph_path, g)}, {"p", config.p}, {"c", config.c}, {"seed", config.seed}};

  SolveReport report;
  Eigen::MatrixXd artifact;
  if (config.p == 2.0) {
    SdpOptions opts = config.sdp;
    opts.seed = config.seed;
    auto result = solve_sdp(g, config.c, opts);
    report = result.report;
    artifact = result.gram.matrix();
    rec["config"]["tol"] = opts.tol;
    rec["config"]["max_iter"] = opts.max_iter;
    rec["config"]["warm_start"] = opts.warm_start == WarmStart::kCut ? "cut" : "orthonormal";
  } else {
    ConcaveOptions opts = config.concave;
    opts.seed = config.seed;
    auto result = solve_concave(g, config.c, config.p, opts);
    report = result.report;
    artifact = result.z.matrix();
    rec["config"]["starts"] = opts.starts;
    rec["config"]["inner_tol"] = opts.inner_tol;
  }
  if (g.num_vertices() <= kDefaultBruteForceCap)
    rec["exact_value"] = exact_balanced_separator(g, config.c).value;
  rec["relaxation"] = solve_json(report);
  rec["relaxation"]["form"] = config.p == 2.0 ? "gram" : "z";
  if (!config.artifact_path.empty()) {
    write_json_file(config.artifact_path, matrix_to_json(artifact));
    rec["artifact"] = config.artifact_path;
  }
  rec["timing"] = timing(started, report.wall_time);
  return {rec, kExitOk};
}

CommandResult cmd_pipeline(const PipelineConfig& config) {
  const auto started = Clock::now();
  const Graph g = load_graph_file(config.graph_path);
  const auto& o = config.options;
  json rec = base_record("pipeline");
  rec["config"] = {{"graph", graph_json(config.graph_path, g)},
                   {"p", config.p},
                   {"c", config.c},
                   {"seed", o.seed},
                   {"delta", o.delta ? json(*o.delta) : json("auto")},
                   {"sigma", o.sigma},
                   {"c_prime", o.c_prime ? json(*o.c_prime) : json("c/4")},
                   {"b_const", o.b_const},
                   {"retries", o.retries}};

  PipelineReport report;
  if (config.embedding_path) {
    const Embedding e = embedding_from_json(read_json_file(*config.embedding_path));
    if (e.size() != g.num_vertices()) throw DomainError("embedding has " + std::to_string(e.size()) +
                                                       " vectors but the graph has " +
                                                       std::to_string(g.num_vertices()) + " vertices");
    rec["config"]["embedding"] = *config.embedding_path;
    report = round_embedding(g, e, config.c, config.p, objective(g, e, config.p), o);
  } else {
    report = pipeline(g, config.c, config.p, o);
    rec["relaxation"] = solve_json(report.solve);
  }
  if (report.exact_value) rec["exact_value"] = *report.exact_value;
  rec["pipeline"] = pipeline_json(report);
  rec["timing"] = timing(started, report.solve.wall_time);
  return {rec, report.success ? kExitOk : kExitFailure};
}

BatchResult cmd_pipeline_batch(const std::string& directory, const PipelineConfig& base, int jobs) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) throw IoError("not a directory: " + directory);
  if (jobs < 1) throw DomainError("--jobs must be at least 1");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  auto run_one = [&](const std::string& path) {
    PipelineConfig config = base;
    config.graph_path = path;
    config.embedding_path.reset();
    config.options.seed = derive_seed(base.options.seed, fnv1a(fs::path(path).filename().string()));
    try {
      return cmd_pipeline(config);
    } catch (const std::exception& e) {
      json rec = base_record("pipeline");
      rec["config"] = {{"graph", {{"path", path}}}, {"p", config.p}, {"c", config.c}, {"seed", config.options.seed}};
      rec["error"] = e.what();
      return CommandResult{rec, kExitUsage};
    }
  };

  BatchResult out;
  out.records.resize(files.size());
  std::vector<int> codes(files.size(), kExitOk);
  for (std::size_t startidx = 0; startidx < files.size(); startidx += static_cast<std::size_t>(jobs)) {
    const std::size_t end = std::min(files.size(), startidx + static_cast<std::size_t>(jobs));
    std::vector<std::future<CommandResult>> running;
    for (std::size_t i = startidx; i < end; ++i)
      running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run_one, files[i]));
    for (std::size_t i = startidx; i < end; ++i) {
      auto result = running[i - startidx].get();
      out.records[i] = std::move(result.record);
      codes[i] = result.exit_code;
    }
  }
  out.exit_code = kExitOk;
  for (int code : codes) out.exit_code = std::max(out.exit_code, code);

  std::ostringstream csv;
  csv << "schema_version,graph,n,m,p,c,seed,exact_value,relaxation_value,success,cut_size,balance,ratio,attempts,error\n";
  for (const json& rec : out.records) {
    const json& cfg = rec["config"];
    const json& graph = cfg["graph"];
    const json pl = rec.value("pipeline", json::object());
    csv << kSchemaVersion << ',' << csv_field(graph.value("path", json(nullptr))) << ','
        << csv_field(graph.value("n", json(nullptr))) << ',' << csv_field(graph.value("m", json(nullptr))) << ','
        << csv_field(cfg["p"]) << ',' << csv_field(cfg["c"]) << ',' << csv_field(cfg["seed"]) << ','
        << csv_field(rec.value("exact_value", json(nullptr))) << ','
        << csv_field(pl.value("relaxation_value", json(nullptr))) << ',' << csv_field(pl.value("success", json(false)))
        << ',' << csv_field(pl.value("cut_size", json(nullptr))) << ',' << csv_field(pl.value("balance", json(nullptr)))
        << ',' << csv_field(pl.value("ratio", json(nullptr))) << ',' << csv_field(pl.value("attempts", json(nullptr)))
        << ',' << csv_field(rec.value("error", json(nullptr))) << '\n';
  }
  out.csv = csv.str();
  return out;
}

CommandResult cmd_verify(std::string_view suite, std::uint64_t seed) {
  const auto started = Clock::now();
  const auto results = run_suites(suite, seed);
  json rec = base_record("verify");
  rec["config"] = {{"suite", suite}, {"seed", seed}};
  json suites = json::array();
  bool all_passed = true;
  for (const auto& r : results) {
    json metrics = json::object();
    for (const auto& [key, value] : r.metrics) metrics[key] = finite_or_null(value);
    suites.push_back({{"name", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"metrics", metrics},
                      {"failures", r.failures}});
    all_passed = all_passed && r.passed;
  }
  rec["suites"] = suites;
  rec["passed"] = all_passed;
  rec["timing"] = timing(started);
  return {rec, all_passed ? kExitOk : kExitFailure};
}

CommandResult cmd_gaussian(int d, double l, double x, std::size_t samples, std::uint64_t seed) {
  const auto started = Clock::now();
  const auto est = gaussian_projection_test(d, l, x, samples, seed);
  json rec = base_record("gaussian-test");
  rec["config"] = {{"d", d}, {"l", l}, {"x", x}, {"samples", samples}, {"seed", seed}};
  rec["low"] = {{"empirical", est.empirical_low},
                {"bound", est.bound_low},
                {"applicable", est.low_applicable},
                {"within_bound", est.empirical_low <= est.bound_low}};
  rec["high"] = {{"empirical", est.empirical_high},
                 {"bound", est.bound_high},
                 {"applicable", est.high_applicable},
                 {"within_bound", est.empirical_high <= est.bound_high}};
  rec["timing"] = timing(started);
  return {rec, kExitOk};
}

json without_timing(json record) {
  record.erase("timing");
  return record;
}

}  // namespace sepkit
