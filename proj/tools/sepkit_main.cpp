#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sepkit/errors.hpp"
#include "sepkit/experiment.hpp"
#include "sepkit/json_io.hpp"

namespace {

using nlohmann::json;

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    sepkit::write_json_file(out_path, doc);
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw sepkit::IoError("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sepkit::IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced-separator relaxations: exact oracle, SDP and concave solvers, rounding"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sepkit::kVersion));

  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Root seed (default: $SEPKIT_SEED or 0)")->each([&](const std::string&) {
      seed_given = true;
    });
    sub->add_option("-o,--out", out_path, "Write the JSON record here instead of stdout");
  };

  // exact
  std::string graph_path;
  double c = 0.25;
  int cap = sepkit::kDefaultBruteForceCap;
  auto* exact = app.add_subcommand("exact", "Exhaustive minimum c-balanced separator");
  exact->add_option("--graph", graph_path, "Edge-list file")->required();
  exact->add_option("--c", c, "Balance fraction")->capture_default_str();
  exact->add_option("--cap", cap, "Largest n to enumerate")->capture_default_str();
  add_common(exact);

  // shared solver flags
  double p = 2.0;
  sepkit::SdpOptions sdp;
  sepkit::ConcaveOptions concave;
  std::string warm_start = "cut";
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--graph", graph_path, "Edge-list file");
    sub->add_option("--p", p, "Exponent in (0, 2]; 2 selects the SDP")->capture_default_str();
    sub->add_option("--c", c, "Balance fraction")->capture_default_str();
    sub->add_option("--tol", sdp.tol, "SDP residual tolerance")->capture_default_str();
    sub->add_option("--max-iter", sdp.max_iter, "SDP iteration cap")->capture_default_str();
    sub->add_option("--warm-start", warm_start, "SDP warm start")
        ->check(CLI::IsMember({"cut", "orthonormal"}))
        ->capture_default_str();
    sub->add_option("--starts", concave.starts, "Concave solver multistarts")->capture_default_str();
    sub->add_option("--inner-tol", concave.inner_tol, "Concave subproblem tolerance")->capture_default_str();
    sub->add_option("--threads", concave.threads, "Concave multistart threads")->capture_default_str();
  };

  // solve
  std::string artifact_path;
  auto* solve = app.add_subcommand("solve", "Solve the relaxation (p = 2: SDP, p < 2: concave program)");
  add_solver(solve);
  solve->get_option("--graph")->required();
  solve->add_option("--artifact", artifact_path, "Write the Gram (p = 2) or Z matrix document here");
  add_common(solve);

  // pipeline
  std::optional<double> delta;
  bool delta_auto = false;
  double sigma = 1.0;
  std::optional<double> c_prime;
  double b_const = 1.0;
  int retries = 64;
  std::string embedding_path, batch_dir, csv_path;
  int jobs = 1;
  auto* pipe = app.add_subcommand("pipeline", "Solve, factor and round to a cut");
  add_solver(pipe);
  auto* delta_opt = pipe->add_option("--delta", delta, "Separation target in ||.||^p units");
  pipe->add_flag("--delta-auto", delta_auto, "Use b (ln n)^{-(1+p/2)/3} (the default)")->excludes(delta_opt);
  pipe->add_option("--sigma", sigma, "Projection margin")->capture_default_str();
  pipe->add_option("--c-prime", c_prime, "Required side fraction (default c/4)");
  pipe->add_option("--b-const", b_const, "Constant b in the automatic delta")->capture_default_str();
  pipe->add_option("--retries", retries, "Set-find attempts")->capture_default_str();
  pipe->add_option("--embedding", embedding_path, "Round this embedding document instead of solving");
  auto* batch_opt = pipe->add_option("--batch", batch_dir, "Run every *.txt graph in this directory");
  pipe->add_option("--jobs", jobs, "Concurrent graphs in batch mode")->capture_default_str();
  pipe->add_option("--csv", csv_path, "Aggregate CSV for batch mode");
  pipe->get_option("--graph")->excludes(batch_opt);
  add_common(pipe);

  // verify
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suite, "concavity|convexity|hessian|gaussian|roundtrip|soundness|all")
      ->capture_default_str();
  add_common(verify);

  // convert-dimacs
  std::string dimacs_in, dimacs_out;
  auto* convert = app.add_subcommand("convert-dimacs", "DIMACS graph to edge-list format");
  convert->add_option("--in", dimacs_in, "DIMACS file")->required();
  convert->add_option("--out", dimacs_out, "Edge-list output (default stdout)");

  // gaussian-test
  int dim = 100;
  double length = 1.0, x = 0.1;
  std::size_t samples = 100000;
  auto* gauss = app.add_subcommand("gaussian-test", "Monte-Carlo check of the random projection bounds");
  gauss->add_option("--d", dim, "Dimension")->capture_default_str();
  gauss->add_option("--l", length, "Vector length")->capture_default_str();
  gauss->add_option("--x", x, "Threshold multiplier")->capture_default_str();
  gauss->add_option("--samples", samples, "Monte-Carlo samples (>= 10^4)")->capture_default_str();
  add_common(gauss);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sepkit::kExitOk : sepkit::kExitUsage;
  }

  try {
    if (!seed_given) seed = sepkit::default_seed();
    sdp.warm_start = warm_start == "cut" ? sepkit::WarmStart::kCut : sepkit::WarmStart::kOrthonormal;

    if (exact->parsed()) {
      const auto r = sepkit::cmd_exact(graph_path, c, cap);
      emit(r.record, out_path);
      return r.exit_code;
    }
    if (solve->parsed()) {
      sepkit::SolveConfig config{graph_path, p, c, sdp, concave, artifact_path, seed};
      const auto r = sepkit::cmd_solve(config);
      emit(r.record, out_path);
      return r.exit_code;
    }
    if (pipe->parsed()) {
      sepkit::PipelineConfig config;
      config.graph_path = graph_path;
      if (!embedding_path.empty()) config.embedding_path = embedding_path;
      config.p = p;
      config.c = c;
      auto& o = config.options;
      o.sdp = sdp;
      o.concave = concave;
      o.delta = delta;
      o.sigma = sigma;
      o.c_prime = c_prime;
      o.b_const = b_const;
      o.retries = retries;
      o.seed = seed;
      if (!batch_dir.empty()) {
        const auto batch = sepkit::cmd_pipeline_batch(batch_dir, config, jobs);
        std::string lines;
        for (const auto& rec : batch.records) lines += rec.dump() + '\n';
        if (out_path.empty()) std::cout << lines;
        else write_text(out_path, lines);
        if (!csv_path.empty()) write_text(csv_path, batch.csv);
        return batch.exit_code;
      }
      if (graph_path.empty()) throw CLI::RequiredError("--graph or --batch");
      const auto r = sepkit::cmd_pipeline(config);
      emit(r.record, out_path);
      return r.exit_code;
    }
    if (verify->parsed()) {
      const auto r = sepkit::cmd_verify(suite, seed);
      emit(r.record, out_path);
      for (const auto& s : r.record["suites"])
        std::cerr << s["name"].get<std::string>() << ": " << (s["passed"].get<bool>() ? "pass" : "FAIL") << " ("
                  << s["checks"].get<std::size_t>() << " checks)\n";
      return r.exit_code;
    }
    if (convert->parsed()) {
      const std::string text = sepkit::convert_dimacs(read_text(dimacs_in));
      if (dimacs_out.empty()) std::cout << text;
      else write_text(dimacs_out, text);
      return sepkit::kExitOk;
    }
    if (gauss->parsed()) {
      const auto r = sepkit::cmd_gaussian(dim, length, x, samples, seed);
      emit(r.record, out_path);
      return r.exit_code;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sepkit::kExitUsage;
  } catch (const sepkit::NonConvergedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sepkit::kExitFailure;
  } catch (const sepkit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sepkit::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sepkit::kExitFailure;
  }
  return sepkit::kExitUsage;
}
