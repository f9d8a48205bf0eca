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

#include "commands.hpp"

#include <map>
#include <sstream>

#include "redsim/bounds.hpp"
#include "redsim/entanglement.hpp"
#include "redsim/phase_optimizer.hpp"
#include "report.hpp"

namespace redsim::cli {

namespace {

constexpr double kFidelityFloor = 1.0 - 1e-9;

json load_config(const RunOptions& opts) {
  if (opts.config.empty()) throw ConfigError("--config: a configuration file is required");
  return read_json_file(opts.config);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json link_concurrence(const ParsedState& s) {
  if (s.pure_weights) return concurrence_from_weights(*s.pure_weights);
  const DensityMatrix rho = s.density();
  if (rho.dims() == Dims{2, 2}) return concurrence_two_qubit(rho);
  return nullptr;
}

json state_payload(const State& s) {
  if (const auto* psi = std::get_if<PureState>(&s)) return {{"amplitudes", to_json(psi->amplitudes())}};
  return {{"density", to_json(std::get<DensityMatrix>(s).matrix())}};
}

std::vector<DensityMatrix> two_qubit_links(const json& specs, const std::string& field) {
  std::vector<DensityMatrix> links;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    const DensityMatrix rho = parse_state_spec(specs[k], f).density();
    if (rho.dims() != Dims{2, 2}) throw ConfigError(f + ": links must be two-qubit states, got dims " + to_string(rho.dims()));
    links.push_back(rho);
  }
  return links;
}

std::vector<LoccRoundPlan> resolve_plans(const std::string& name) {
  if (name == "default") return default_plan_families();
  try {
    return {plan_by_name(name)};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--plan: ") + e.what());
  }
}

json plan_names_json(const std::vector<LoccRoundPlan>& plans) {
  json names = json::array();
  for (const auto& p : plans) names.push_back(p.name);
  return names;
}

// Family name is the sample descriptor up to '#'.
std::string family_of(const std::string& descriptor) { return descriptor.substr(0, descriptor.find('#')); }

json bound_payload(const BoundReport& report) {
  struct Stats {
    std::size_t count = 0;
    double sum = 0.0;
    double max = 0.0;
  };
  std::map<std::string, Stats> families;
  std::string argmax;
  double best = -1.0;
  for (const auto& s : report.samples) {
    auto& f = families[family_of(s.strategy)];
    f.max = f.count == 0 ? s.achieved : std::max(f.max, s.achieved);
    ++f.count;
    f.sum += s.achieved;
    if (s.achieved > best) {
      best = s.achieved;
      argmax = s.strategy;
    }
  }
  json fam = json::object();
  for (const auto& [name, f] : families)
    fam[name] = {{"samples", f.count}, {"mean_achieved", f.sum / double(f.count)}, {"max_achieved", f.max}};
  return {
      {"link_concurrences", report.link_concurrences},
      {"bound", report.bound},
      {"samples", report.samples.size()},
      {"max_achieved", report.max_achieved},
      {"best_strategy", argmax},
      {"violations", report.violations},
      {"violation_tolerance", report.violation_tolerance},
      {"families", fam},
      {"strategy_space", "sampled LOCC families only; the bound quantifies over all LOCC"},
  };
}

std::string bound_csv(const BoundReport& report) {
  std::ostringstream out;
  out << "strategy,c14\n";
  for (const auto& s : report.samples) out << s.strategy << ',' << format_number(s.achieved) << '\n';
  return out.str();
}

int bound_exit(const BoundReport& report) { return report.violations > 0 ? kExitBoundViolation : kExitOk; }

json echo_options(const RunOptions& opts, std::initializer_list<const char*> keys) {
  json j = json::object();
  for (const std::string k : keys) {
    if (k == "theta") j[k] = opts.theta;
    if (k == "trials") j[k] = opts.trials;
    if (k == "restarts") j[k] = opts.restarts;
    if (k == "plan") j[k] = opts.plan;
    if (k == "strategy") j[k] = opts.strategy;
  }
  return j;
}

}  // namespace

CommandOutput cmd_protocol(const RunOptions& opts) {
  const json config = load_config(opts);
  const ParsedState a = parse_state_spec(require_field(config, "a", ""), "a");
  const ParsedState b = parse_state_spec(require_field(config, "b", ""), "b");
  for (const auto* s : {&a, &b})
    if (!s->mixed)
      throw ConfigError(std::string(s == &a ? "a" : "b") + ": the protocol needs a pure-schmidt or mixed-class state");
  const std::size_t d = a.mixed->dimension();
  if (b.mixed->dimension() != d)
    throw ConfigError("b: dimension " + std::to_string(b.mixed->dimension()) + " does not match a (" +
                      std::to_string(d) + ")");

  CommandOutput out;
  json theta_echo;
  const PhaseMatrix theta = resolve_theta(opts.theta, d, &theta_echo);
  out.inputs = {{"config", config}, {"theta", theta_echo}};

  const bool pure = a.pure_weights && b.pure_weights;
  const ProtocolResult r =
      pure ? run_rpbes_pure(*a.pure_weights, *b.pure_weights, theta) : run_rpbes_mixed_class(*a.mixed, *b.mixed, theta);

  json outcomes = json::array();
  std::ostringstream csv;
  csv << "j,jp,probability\n";
  double worst_probability = 0.0;
  for (const auto& o : r.outcomes.outcomes) {
    outcomes.push_back({{"j", o.labels[0]}, {"jp", o.labels[1]}, {"probability", o.probability}});
    csv << o.labels[0] << ',' << o.labels[1] << ',' << format_number(o.probability) << '\n';
    worst_probability = std::max(worst_probability, std::abs(o.probability - 1.0 / double(d * d)));
  }

  const json c12 = link_concurrence(a);
  const json c34 = link_concurrence(b);
  json final_state = state_payload(r.final_state);
  const bool two_qubit = d == 2;
  if (pure || two_qubit) {
    const double c = concurrence(r.final_state);
    final_state["concurrence"] = c;
    if (two_qubit) final_state["entanglement_of_formation"] = entanglement_of_formation(std::min(c, 1.0));
  } else {
    final_state["concurrence"] = nullptr;
  }

  out.result = {
      {"mode", pure ? "pure" : "mixed-class"},
      {"dimension", d},
      {"theta", to_json(theta.matrix())},
      {"outcomes", outcomes},
      {"classical_bits", {{"alice", r.classical_bits_alice}, {"bob", r.classical_bits_bob}}},
      {"link_concurrences", {c12, c34}},
      {"product_bound", c12.is_number() && c34.is_number() ? json(c12.get<double>() * c34.get<double>()) : json()},
      {"final_state", final_state},
      {"min_pairwise_fidelity", r.min_pairwise_fidelity},
      {"max_prediction_error", r.max_prediction_error},
  };
  out.csv = csv.str();
  const bool independent = r.min_pairwise_fidelity >= kFidelityFloor;
  const bool equiprobable = !pure || worst_probability <= 1e-10;
  const bool predicted = pure ? r.max_prediction_error <= 1e-9 : r.max_prediction_error <= 1e-8;
  out.result["invariants"] = {
      {"outcome_independence", independent}, {"equiprobable", equiprobable}, {"matches_prediction", predicted}};
  if (!(independent && equiprobable && predicted)) out.exit_code = kExitInternalFailure;
  return out;
}

CommandOutput cmd_verify_bound(const RunOptions& opts) {
  const json config = load_config(opts);
  const json pair = json::array({require_field(config, "a", ""), require_field(config, "b", "")});
  const auto links = two_qubit_links(pair, "links");
  if (opts.trials < 1) throw ConfigError("--trials: must be at least 1");
  const auto plans = resolve_plans(opts.plan);

  CommandOutput out;
  out.inputs = {{"config", config}, {"options", echo_options(opts, {"plan", "trials"})}};
  const BoundReport report = monte_carlo_red(links[0], links[1], plans, opts.trials, opts.seed);
  out.result = bound_payload(report);
  out.result["plans"] = plan_names_json(plans);
  out.csv = bound_csv(report);
  out.exit_code = bound_exit(report);
  return out;
}

CommandOutput cmd_chain(const RunOptions& opts) {
  const json config = load_config(opts);
  const json& specs = require_field(config, "links", "");
  if (!specs.is_array()) throw ConfigError("links: expected an array of state specifications");
  if (specs.size() < 2) throw ConfigError("links: a chain needs at least two links");
  const auto links = two_qubit_links(specs, "links");
  const auto strategy = chain_strategy_from_name(opts.strategy);
  if (!strategy) throw ConfigError("--strategy: expected sequential-rpbes or random, got '" + opts.strategy + "'");
  if (opts.trials < 1) throw ConfigError("--trials: must be at least 1");

  CommandOutput out;
  out.inputs = {{"config", config}, {"options", echo_options(opts, {"strategy", "trials"})}};
  const BoundReport report = chain_corollary_sim(links, *strategy, opts.trials, opts.seed);
  out.result = bound_payload(report);
  out.result["strategy"] = to_string(*strategy);
  out.result["links"] = links.size();
  out.csv = bound_csv(report);
  out.exit_code = bound_exit(report);
  return out;
}

CommandOutput cmd_optimize(const RunOptions& opts) {
  json config = json::object();
  if (!opts.config.empty()) config = read_json_file(opts.config);
  auto weights = [&](const std::string& flag, const std::string& key) {
    if (!flag.empty()) return parse_weight_list(flag, "--" + key);
    return parse_weights(require_field(config, key, ""), key);
  };
  const RVector<double> lambda = weights(opts.lambda, "lambda");
  const RVector<double> eta = weights(opts.eta, "eta");
  if (lambda.size() != eta.size()) throw ConfigError("eta: length does not match lambda");
  if (opts.restarts < 1) throw ConfigError("--restarts: must be at least 1");

  CommandOutput out;
  out.inputs = {{"lambda", to_json(lambda)}, {"eta", to_json(eta)}, {"options", echo_options(opts, {"restarts"})}};
  OptimizerOptions o;
  o.restarts = opts.restarts;
  o.seed = opts.seed;
  const OptimizationResult r = optimize_phases(lambda, eta, o);
  const double product = concurrence_from_weights(lambda) * concurrence_from_weights(eta);
  const double check = concurrence_pure(predicted_final_state(lambda, eta, r.theta_star));

  out.result = {
      {"dimension", lambda.size()},
      {"theta_star", to_json(r.theta_star.matrix())},
      {"c_star", r.c_star},
      {"baseline_c", r.baseline_c},
      {"improvement_over_baseline", r.c_star - r.baseline_c},
      {"link_product", product},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"best_restart", r.best_restart},
      {"restart_values", r.restart_values},
  };
  std::ostringstream csv;
  csv << "restart,c\n";
  for (std::size_t k = 0; k < r.restart_values.size(); ++k) csv << k << ',' << format_number(r.restart_values[k]) << '\n';
  out.csv = csv.str();
  if (r.c_star < r.baseline_c - 1e-9 || std::abs(check - r.c_star) > 1e-8) out.exit_code = kExitInternalFailure;
  return out;
}

CommandOutput cmd_concurrence(const RunOptions& opts) {
  const json config = load_config(opts);
  const bool wrapped = config.is_object() && config.contains("state");
  const ParsedState s = parse_state_spec(wrapped ? config["state"] : config, wrapped ? "state" : "");
  const Dims& dims = std::visit([](const auto& st) -> const Dims& { return st.dims(); }, s.state);
  const bool pure = std::holds_alternative<PureState>(s.state);
  if (dims.size() != 2) throw ConfigError("dims: concurrence needs a bipartite state, got " + to_string(dims));
  if (!pure && dims != Dims{2, 2})
    throw ConfigError("dims: mixed-state concurrence is only available for two qubits, got " + to_string(dims));

  CommandOutput out;
  out.inputs = {{"config", config}};
  const double c = concurrence(s.state);
  out.result = {{"kind", s.kind}, {"dims", dims}, {"concurrence", c}};
  if (dims == Dims{2, 2}) {
    const DensityMatrix rho = s.density();
    out.result["entanglement_of_formation"] = entanglement_of_formation(std::min(c, 1.0));
    const Eigen::Vector4d mu = wootters_spectrum(rho);
    out.result["wootters_spectrum"] = {mu(0), mu(1), mu(2), mu(3)};
  }
  out.csv = "concurrence\n" + format_number(c) + "\n";
  return out;
}

json make_run_report(const std::string& command, const RunOptions& opts, const CommandOutput& out,
                     double duration_seconds) {
  json result = out.result;
  round_numbers(result);
  json duration = duration_seconds;
  round_numbers(duration);
  return {
      {"command", command},
      {"seed", opts.seed},
      {"input_digest", input_digest(out.inputs)},
      {"inputs", out.inputs},
      {"result", result},
      {"exit_code", out.exit_code},
      {"duration_seconds", duration},
  };
}

}  // namespace redsim::cli
