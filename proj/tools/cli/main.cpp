// Copyright 2026 The redsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace redsim::cli;

using Command = CommandOutput (*)(const RunOptions&);

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path.string() + ": cannot open for writing");
  f << text;
}

int run(const std::string& name, Command command, const RunOptions& opts, const std::string& out_path, bool csv) {
  const auto start = std::chrono::steady_clock::now();
  const CommandOutput out = command(opts);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string report = make_run_report(name, opts, out, seconds).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << report;
    if (csv) std::cout << out.csv;
  } else {
    write_text(out_path, report);
    if (csv) write_text(std::filesystem::path(out_path).replace_extension(".csv"), out.csv);
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Remote entanglement distribution simulator"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string out_path;
  bool csv = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", opts.seed, "Master seed for every random choice");
    sub->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    sub->add_flag("--csv", csv, "Also emit flat per-sample rows (next to --out, or after the report)");
  };

  auto* protocol = app.add_subcommand("protocol", "Run the RPBES protocol on a pair of states");
  protocol->add_option("--config", opts.config, "JSON file with state specifications a and b")->required();
  protocol->add_option("--theta", opts.theta, "paper-2x2 | paper-uniform | zero | path to a JSON matrix");
  common(protocol);

  auto* verify = app.add_subcommand("verify-bound", "Monte Carlo check of C14 <= C12 C34 over LOCC strategies");
  verify->add_option("--config", opts.config, "JSON file with two-qubit states a and b")->required();
  verify->add_option("--trials", opts.trials, "Number of sampled strategies");
  verify->add_option("--plan", opts.plan, "default | bell | projective | kraus | rpbes | rpbes-saturating | multi-round | local-unitary");
  common(verify);

  auto* chain = app.add_subcommand("chain", "Distribute entanglement along a chain of two-qubit links");
  chain->add_option("--config", opts.config, "JSON file with a links array")->required();
  chain->add_option("--strategy", opts.strategy, "sequential-rpbes | random");
  chain->add_option("--trials", opts.trials, "Number of sampled strategies (random strategy)");
  common(chain);

  auto* optimize = app.add_subcommand("optimize", "Maximize the final-state concurrence over the phase matrix");
  optimize->add_option("--config", opts.config, "JSON file with lambda and eta weight lists");
  optimize->add_option("--lambda", opts.lambda, "Comma-separated Schmidt weights of the first link");
  optimize->add_option("--eta", opts.eta, "Comma-separated Schmidt weights of the second link");
  optimize->add_option("--restarts", opts.restarts, "Number of restarts");
  common(optimize);

  auto* conc = app.add_subcommand("concurrence", "Print the concurrence and entanglement of formation of a state");
  conc->add_option("--config", opts.config, "JSON state specification")->required();
  common(conc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    redsim::load_tolerance_from_env();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*protocol) return run("protocol", cmd_protocol, opts, out_path, csv);
    if (*verify) return run("verify-bound", cmd_verify_bound, opts, out_path, csv);
    if (*chain) return run("chain", cmd_chain, opts, out_path, csv);
    if (*optimize) return run("optimize", cmd_optimize, opts, out_path, csv);
    return run("concurrence", cmd_concurrence, opts, out_path, csv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalFailure;
  }
}
