// Experiment runners behind the qlab command line: configuration, caps,
// pass/fail reports with JSON and table views, and a small worker pool.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qlab/adversary.hpp"

namespace qlab {

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitUsage = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace caps {
inline constexpr int kSearch = 64;
inline constexpr int kComparisonTrace = 4;
inline constexpr int kComparisonCombinatorial = 5;
inline constexpr int kHilbert = 4096;
inline constexpr int kHilbertSweep = 512;
inline constexpr int kCover = 65536;
inline constexpr std::int64_t kFtilde = std::int64_t{1} << 42;
}  // namespace caps

struct ExperimentConfig {
  std::string command;
  std::int64_t n = 0;
  int n_max = 0;
  int target = -1;
  double eps = 0.0;
  double tol = kCheckTolerance;
  std::string out;
  bool trace = false;
  std::uint64_t seed = 1;
  bool force = false;
  Problem problem = Problem::Search;
  std::string cert;

  nlohmann::json to_json() const;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;

  friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Check> checks;
  nlohmann::json values = nlohmann::json::object();
  std::string summary;
  double seconds = 0.0;

  bool passed() const;
  void add(std::string name, bool pass, std::string detail = {});
  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  std::string table() const;

  friend bool operator==(const Report&, const Report&) = default;
};

struct CommandOutput {
  Report report;
  std::string artifact;  // CSV, certificate, trace lines or bound JSON; may be empty
};

CommandOutput cmd_run(const ExperimentConfig& cfg);
CommandOutput cmd_verify(const ExperimentConfig& cfg);
CommandOutput cmd_adversary(const ExperimentConfig& cfg);
CommandOutput cmd_hilbert(const ExperimentConfig& cfg);
CommandOutput cmd_bounds(const ExperimentConfig& cfg);
CommandOutput cmd_ftilde(const ExperimentConfig& cfg);
CommandOutput cmd_cover(const ExperimentConfig& cfg);

/// Dispatches on cfg.command and fills in the timing and config echo.
CommandOutput run_command(const ExperimentConfig& cfg);

/// ceil(log3 n) for n >= 1, in integers.
int ceil_log3(std::int64_t n);

/// Calls fn(k) for k in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). fn must write only to slot k of its own output.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) fn(k);
    });
  }
}

}  // namespace qlab
