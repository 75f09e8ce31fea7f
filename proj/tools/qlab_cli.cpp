// qlab: command-line front end for the query-model laboratory.
//
//   qlab run --n 16 --target 5
//   qlab verify --n-max 64
//   qlab adversary --problem search --n 8 --out trace.csv
//   qlab hilbert --n 512
//   qlab bounds --problem search --n 1024 --eps 0
//   qlab ftilde --n 531441
//   qlab cover --n 64 --out cover.json
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qlab/harness.hpp"

namespace {

qlab::Problem problem_from_flag(const std::string& name) {
  try {
    return qlab::parse_problem(name);
  } catch (const std::exception&) {
    throw qlab::UsageError("unknown problem '" + name + "' (search, sort, ed)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum query-model laboratory: exact ordered search and adversary bounds"};
  app.require_subcommand(1);

  qlab::ExperimentConfig cfg;
  std::string problem = "search";
  bool json_output = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write the command's artifact (or the JSON report) here");
    sub->add_flag("--json", json_output, "Print the JSON report instead of the table");
    sub->add_option("--seed", cfg.seed, "Seed for randomized steps")->capture_default_str();
    sub->add_flag("--force", cfg.force, "Lift the desk-scale caps");
  };

  auto* run = app.add_subcommand("run", "Search one oracle and report the answer and query count");
  run->add_option("--n", cfg.n, "Input length")->required();
  run->add_option("--target", cfg.target, "Answer f(x) of the oracle")->required();
  run->add_option("--tol", cfg.tol, "Exactness tolerance")->capture_default_str();
  run->add_flag("--trace", cfg.trace, "Emit a JSON line per operator");
  common(run);

  auto* verify = app.add_subcommand("verify", "Exhaustive exactness sweep over even N");
  verify->add_option("--n-max", cfg.n_max, "Largest N to sweep");
  verify->add_option("--tol", cfg.tol, "Exactness tolerance")->capture_default_str();
  verify->add_option("--cert", cfg.cert, "Check a covering certificate and run the search on it unvalidated");
  common(verify);

  auto* adversary = app.add_subcommand("adversary", "Progress trace W_j with per-step bounds");
  adversary->add_option("--problem", problem, "search, sort or ed")->capture_default_str();
  adversary->add_option("--n", cfg.n, "Input length")->required();
  adversary->add_option("--eps", cfg.eps, "Error parameter recorded in the trace")->capture_default_str();
  common(adversary);

  auto* hilbert = app.add_subcommand("hilbert", "Spectral norm of the truncated Hilbert matrix B_N");
  hilbert->add_option("--n", cfg.n, "Dimension")->required();
  hilbert->add_option("--tol", cfg.tol, "Power-iteration tolerance")->capture_default_str();
  common(hilbert);

  auto* bounds = app.add_subcommand("bounds", "Query lower bound for search, sort or ed");
  bounds->add_option("--problem", problem, "search, sort or ed")->capture_default_str();
  bounds->add_option("--n", cfg.n, "Input length")->required();
  bounds->add_option("--eps", cfg.eps, "Error probability")->capture_default_str();
  common(bounds);

  auto* ftilde = app.add_subcommand("ftilde", "The query-count recursion against ceil(log3 N)");
  ftilde->add_option("--n", cfg.n, "Input length")->required();
  common(ftilde);

  auto* cover = app.add_subcommand("cover", "Construct, validate and emit a pebble covering");
  cover->add_option("--n", cfg.n, "Number of leaves (even)")->required();
  common(cover);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qlab::kExitPass : qlab::kExitUsage;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.problem = problem_from_flag(problem);
    const qlab::CommandOutput out = qlab::run_command(cfg);
    const std::string report_json = out.report.to_json().dump(2) + "\n";
    std::cout << (json_output ? report_json : out.report.table());
    if (!cfg.out.empty()) {
      std::ofstream file(cfg.out);
      if (!file) throw qlab::UsageError("cannot write " + cfg.out);
      file << (out.artifact.empty() ? report_json : out.artifact);
    } else if (cfg.trace && !json_output) {
      std::cout << out.artifact;
    }
    return out.report.passed() ? qlab::kExitPass : qlab::kExitCheckFailure;
  } catch (const qlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return qlab::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qlab::kExitCheckFailure;
  }
}
