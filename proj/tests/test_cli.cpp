#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include "corpus.hpp"
#include "sepkit/experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SEPKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("sepkit_cli_" + std::to_string(::getpid()) + "_" +
                                                std::to_string(counter++))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const sepkit::Graph& g) const {
    const fs::path p = path / name;
    std::ofstream(p) << sepkit::to_edge_list(g);
    return p.string();
  }
  static inline int counter = 0;
};

json strip_timing(json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("exact") {
  TempDir dir;
  const auto c4 = dir.write("c4.txt", corpus::cycle(4));
  const Run r = run("exact --graph " + c4 + " --c 0.25");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["exact_value"] == 2);
  CHECK(j["schema_version"] == sepkit::kSchemaVersion);
  CHECK(j["command"] == "exact");

  CHECK(run("exact --graph " + (dir.path / "missing.txt").string() + " --c 0.25").exit_code == 2);
  CHECK(run("exact --graph " + dir.write("c25.txt", corpus::cycle(25)) + " --c 0.25").exit_code == 2);
}

TEST_CASE("solve") {
  TempDir dir;
  const auto c4 = dir.write("c4.txt", corpus::cycle(4));
  for (const char* p : {"2", "1"}) {
    const std::string artifact = (dir.path / (std::string("x") + p + ".json")).string();
    const Run r = run("solve --graph " + c4 + " --p " + p + " --c 0.25 --artifact " + artifact);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["relaxation"]["value"].get<double>() <= 2.0 + 1e-5);
    CHECK(j["relaxation"]["residuals"]["feasible"] == true);
    std::ifstream in(artifact);
    const json doc = json::parse(in);
    CHECK(doc["n"] == 4);
    CHECK(doc["matrix"].size() == 4);
  }
  CHECK(run("solve --graph " + c4 + " --p 2.5 --c 0.25").exit_code == 2);
  CHECK(run("solve --graph " + c4 + " --p 1 --c 0.25 --warm-start sideways").exit_code == 2);
}

TEST_CASE("pipeline success, failure and determinism") {
  TempDir dir;
  const auto c4 = dir.write("c4.txt", corpus::cycle(4));
  const Run ok = run("pipeline --graph " + c4 + " --p 2 --c 0.25 --seed 3");
  REQUIRE(ok.exit_code == 0);
  const json j = json::parse(ok.out);
  CHECK(j["pipeline"]["success"] == true);
  CHECK(j["pipeline"]["ratio"].get<double>() >= 1.0 - 1e-9);
  CHECK(j["pipeline"]["separated"] == true);

  const Run again = run("pipeline --graph " + c4 + " --p 2 --c 0.25 --seed 3");
  CHECK(strip_timing(json::parse(again.out)) == strip_timing(j));

  const Run failed = run("pipeline --graph " + c4 + " --p 2 --c 0.25 --delta 100 --retries 2");
  CHECK(failed.exit_code == 1);
  CHECK(json::parse(failed.out)["pipeline"]["success"] == false);

  CHECK(run("pipeline --graph " + c4 + " --p 1 --c 0.25 --delta 1 --delta-auto").exit_code == 2);
}

TEST_CASE("pipeline consumes an embedding document") {
  TempDir dir;
  const auto c4 = dir.write("c4.txt", corpus::cycle(4));
  const fs::path emb = dir.path / "e.json";
  std::ofstream(emb) << R"({"n": 4, "d": 1, "vectors": [[1], [1], [-1], [-1]]})";
  const Run r = run("pipeline --graph " + c4 + " --p 1 --c 0.25 --embedding " + emb.string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pipeline"]["cut_size"] == 2);
  CHECK(j["pipeline"]["relaxation_value"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("SEPKIT_SEED sets the default seed") {
  TempDir dir;
  const auto g = dir.write("g.txt", corpus::gnp(8, 0.5, 4));
  const std::string base = "pipeline --graph " + g + " --p 2 --c 0.25";
  const json explicit_seed = strip_timing(json::parse(run(base + " --seed 41").out));
  const std::string env = "SEPKIT_SEED=41 ";
  const std::string cmd = env + SEPKIT_CLI + " " + base + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  pclose(pipe);
  CHECK(strip_timing(json::parse(out)) == explicit_seed);
  CHECK(explicit_seed["config"]["seed"] == 41);
}

TEST_CASE("batch mode writes one record per graph and a CSV") {
  TempDir dir;
  const fs::path graphs = dir.path / "graphs";
  fs::create_directories(graphs);
  std::ofstream(graphs / "a.txt") << sepkit::to_edge_list(corpus::cycle(4));
  std::ofstream(graphs / "b.txt") << sepkit::to_edge_list(corpus::path(3));
  std::ofstream(graphs / "c.txt") << sepkit::to_edge_list(corpus::cycle(6));
  const std::string csv = (dir.path / "out.csv").string();
  const Run r = run("pipeline --batch " + graphs.string() + " --p 2 --c 0.25 --jobs 2 --csv " + csv);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  int records = 0;
  for (std::string line; std::getline(lines, line);)
    if (!line.empty() && json::accept(line)) ++records;
  CHECK(records == 3);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("schema_version,", 0) == 0);
  int rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 3);

  // Same records with one job.
  const Run serial = run("pipeline --batch " + graphs.string() + " --p 2 --c 0.25 --jobs 1");
  std::istringstream a(r.out), b(serial.out);
  for (std::string x, y; std::getline(a, x) && std::getline(b, y);)
    if (json::accept(x)) CHECK(strip_timing(json::parse(x)) == strip_timing(json::parse(y)));
}

TEST_CASE("verify") {
  const Run one = run("verify --suite concavity --seed 7");
  CHECK(one.exit_code == 0);
  const json j = json::parse(one.out);
  CHECK(j["passed"] == true);
  CHECK(j["suites"][0]["checks"].get<int>() > 0);
  const Run bad = run("verify --suite nope");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("convert-dimacs and gaussian-test") {
  TempDir dir;
  const fs::path in = dir.path / "g.col", out = dir.path / "g.txt";
  std::ofstream(in) << "c tiny\np edge 3 2\ne 1 2\ne 2 3\n";
  CHECK(run("convert-dimacs --in " + in.string() + " --out " + out.string()).exit_code == 0);
  const sepkit::Graph g = sepkit::load_graph_file(out.string());
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));

  const Run r = run("gaussian-test --d 100 --x 0.1 --seed 1");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["low"]["within_bound"] == true);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("exact --c 0.25").exit_code == 2);
}
