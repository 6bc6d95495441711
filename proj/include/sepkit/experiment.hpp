#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sepkit/rounding.hpp"

namespace sepkit {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  // Verification failed or rounding exhausted its retries.
  kExitFailure = 1,
  // Bad arguments, unreadable input, parameters outside an operation's domain.
  kExitUsage = 2,
};

struct CommandResult {
  nlohmann::json record;
  int exit_code = kExitOk;
};

// Seed used when --seed is absent: $SEPKIT_SEED, else 0.
std::uint64_t default_seed();

CommandResult cmd_exact(const std::string& graph_path, double c, int cap = kDefaultBruteForceCap);

struct SolveConfig {
  std::string graph_path;
  double p = 2.0;
  double c = 0.25;
  SdpOptions sdp;
  ConcaveOptions concave;
  // Gram (p = 2) or Z (p < 2) matrix document; skipped when empty.
  std::string artifact_path;
  std::uint64_t seed = 0;
};

CommandResult cmd_solve(const SolveConfig& config);

struct PipelineConfig {
  std::string graph_path;
  // Round this embedding document instead of solving.
  std::optional<std::string> embedding_path;
  double p = 2.0;
  double c = 0.25;
  PipelineOptions options;
};

CommandResult cmd_pipeline(const PipelineConfig& config);

struct BatchResult {
  std::vector<nlohmann::json> records;
  std::string csv;
  int exit_code = kExitOk;
};

// Every *.txt graph in `directory`, in name order. Each graph gets a seed
// derived from the base seed and its file name, so results do not depend on
// scheduling. At most `jobs` graphs run at once.
BatchResult cmd_pipeline_batch(const std::string& directory, const PipelineConfig& base, int jobs);

CommandResult cmd_verify(std::string_view suite, std::uint64_t seed);

CommandResult cmd_gaussian(int d, double l, double x, std::size_t samples, std::uint64_t seed);

// Record with the "timing" object removed; what reproducibility compares.
nlohmann::json without_timing(nlohmann::json record);

}  // namespace sepkit
