// Copyright 2026, The arl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arl/bridge.hpp"
#include "arl/classifier.hpp"
#include "arl/dataset.hpp"
#include "arl/empirical.hpp"
#include "arl/error.hpp"
#include "arl/learner.hpp"
#include "arl/metrics.hpp"
#include "arl/miner.hpp"
#include "arl/serialize.hpp"

namespace arl::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string input;
  bool no_header = false;
  std::vector<std::string> numeric_columns;
  int bins = 10;

  std::string backend = "empirical";
  std::string paradigm = "single";
  double alpha = 0.0;
  Thresholds thresholds{0.5, 0.8, 0.5, 2};
  int workers = 1;

  bool itemsets = false;
  double min_support = 0.1;
  double min_confidence = 0.8;

  std::string rules_path;
  std::string class_column;
  std::string learner = "rules";
  int folds = 5;
  std::vector<std::uint64_t> seeds;

  std::vector<double> tau_a_grid;
  std::vector<double> tau_c_grid;

  std::string output;
  std::string report;
  std::string corels;
  std::string format = "json";
};

Dataset load(const RunConfig& config) {
  Dataset data = ingest_csv(config.input, !config.no_header);
  if (!config.numeric_columns.empty()) data = discretize_equal_frequency(data, config.numeric_columns, config.bins);
  return data;
}

std::unique_ptr<ModelBackend> make_backend(const RunConfig& config) {
  if (config.backend == "empirical") return std::make_unique<EmpiricalBackend>(config.alpha);
  constexpr std::string_view prefix = "bridge:";
  if (config.backend.rfind(prefix, 0) == 0) {
    const std::string command = config.backend.substr(prefix.size());
    if (command.empty()) throw ConfigError("bridge backend needs a server command");
    return std::make_unique<BridgeBackend>(command);
  }
  throw ConfigError("unknown backend '" + config.backend + "' (expected empirical or bridge:<command>)");
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path + "'");
  file << text;
}

void write_json(const std::string& path, const json& document, std::ostream& out) {
  write_text(path, document.dump(2) + "\n", out);
}

json counters_json(const RunCounters& c) {
  return json{{"feature_sets", c.feature_sets},
              {"probes", c.probes},
              {"fits", c.fits},
              {"predict_calls", c.predict_calls},
              {"undefined_antecedents", c.undefined_antecedents}};
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0,1]");
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int cmd_learn(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.thresholds.validate();
  const auto start = Clock::now();
  const Dataset data = load(config);
  const ExtractionOptions options{config.workers};

  if (config.itemsets) {
    auto backend = make_backend(config);
    RunCounters counters;
    const auto itemsets = extract_frequent_itemsets(data, *backend, config.thresholds.max_antecedents,
                                                    config.thresholds.tau_s, options, &counters);
    json document = itemsets_to_json(itemsets, data.universe());
    document["meta"] = {{"backend", backend->name()},
                        {"tau_s", config.thresholds.tau_s},
                        {"max_size", config.thresholds.max_antecedents},
                        {"dataset_digest", data.digest()},
                        {"probe_count", counters.probes},
                        {"fit_count", counters.fits}};
    write_json(config.output, document, out);
    if (!config.corels.empty()) write_text(config.corels, itemsets_to_corels(itemsets, data), out);
    if (!config.report.empty())
      write_json(config.report, json{{"command", "learn"}, {"mode", "itemsets"}, {"counters", counters_json(counters)},
                                     {"itemsets", itemsets.size()}, {"wall_seconds", seconds_since(start)}},
                 out);
    err << "learned " << itemsets.size() << " itemsets\n";
    return kExitOk;
  }

  RuleSet rules;
  if (config.paradigm == "single") {
    auto backend = make_backend(config);
    rules = extract_rules_single_target(data, *backend, config.thresholds, options);
  } else if (config.paradigm == "multi") {
    if (config.backend != "empirical") throw ConfigError("multi-target paradigm requires the empirical backend");
    const StitchedEmpiricalModel model(data, config.alpha);
    const int k = data.feature_count();
    const auto sets = enumerate_antecedent_feature_sets(k, std::min(config.thresholds.max_antecedents, k));
    rules = extract_rules_multi_target(model, data.universe(), sets, config.thresholds);
    rules.meta.dataset_digest = data.digest();
  } else {
    throw ConfigError("unknown paradigm '" + config.paradigm + "' (expected single or multi)");
  }
  write_json(config.output, ruleset_to_json(rules, data), out);
  if (!config.report.empty())
    write_json(config.report,
               json{{"command", "learn"}, {"paradigm", config.paradigm}, {"backend", rules.meta.backend},
                    {"fit_strategy", rules.meta.fit_strategy}, {"counters", counters_json(rules.meta.counters)},
                    {"rules", rules.size()}, {"wall_seconds", seconds_since(start)}},
               out);
  err << "learned " << rules.size() << " rules (" << rules.meta.counters.probes << " probes, "
      << rules.meta.counters.fits << " fits)\n";
  return kExitOk;
}

int cmd_mine(const RunConfig& config, std::ostream& out, std::ostream& err) {
  check_unit(config.min_support, "min support");
  check_unit(config.min_confidence, "min confidence");
  if (config.thresholds.max_antecedents < 1) throw ConfigError("max antecedents must be >= 1");
  const auto start = Clock::now();
  const Dataset data = load(config);
  if (config.itemsets) {
    const auto itemsets =
        mine_itemsets(data, config.min_support, config.thresholds.max_antecedents, config.workers);
    json document = itemsets_to_json(itemsets, data.universe());
    document["meta"] = {{"backend", "levelwise-support-miner"},
                        {"min_support", config.min_support},
                        {"max_size", config.thresholds.max_antecedents},
                        {"dataset_digest", data.digest()}};
    write_json(config.output, document, out);
    if (!config.corels.empty()) write_text(config.corels, itemsets_to_corels(itemsets, data), out);
    err << "mined " << itemsets.size() << " itemsets\n";
  } else {
    const MinerParams params{config.min_support, config.min_confidence, config.thresholds.max_antecedents,
                             config.workers};
    const RuleSet rules = mine(data, params);
    json document = ruleset_to_json(rules, data);
    document["meta"]["min_support"] = config.min_support;
    document["meta"]["min_confidence"] = config.min_confidence;
    write_json(config.output, document, out);
    err << "mined " << rules.size() << " rules\n";
  }
  if (!config.report.empty())
    write_json(config.report, json{{"command", "mine"}, {"wall_seconds", seconds_since(start)}}, out);
  return kExitOk;
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Dataset data = load(config);
  std::ifstream file(config.rules_path, std::ios::binary);
  if (!file) throw DataError("cannot open '" + config.rules_path + "'");
  json document;
  try {
    document = json::parse(file);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("rules file is not valid JSON: ") + e.what());
  }
  const RuleSet rules = ruleset_from_json(document, data.universe());
  const RuleSetSummary summary = summarize(rules.rules, data);
  if (config.format == "table") {
    const std::string label = rules.meta.backend.empty() ? "rules" : rules.meta.backend;
    write_text(config.output, summary_table({{label, summary}}), out);
  } else {
    write_json(config.output, summary_to_json(summary), out);
  }
  err << "evaluated " << summary.rule_count << " rules\n";
  return kExitOk;
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.thresholds.validate();
  check_unit(config.min_support, "min support");
  check_unit(config.min_confidence, "min confidence");
  if (config.folds < 2) throw ConfigError("folds must be >= 2");
  const Dataset data = load(config);
  const FeatureId class_feature = data.universe().require_feature(config.class_column);
  std::vector<std::uint64_t> seeds = config.seeds;
  if (seeds.empty()) seeds.assign(kDefaultSeeds.begin(), kDefaultSeeds.end());

  RuleLearner learner;
  std::unique_ptr<ModelBackend> backend;
  int workers = config.workers;
  if (config.learner == "rules") {
    backend = make_backend(config);
    if (!backend->parallel_safe()) workers = 1;
    learner = [&backend, thresholds = config.thresholds](const Dataset& train) {
      return extract_rules_single_target(train, *backend, thresholds);
    };
  } else if (config.learner == "miner") {
    const MinerParams params{config.min_support, config.min_confidence, config.thresholds.max_antecedents, 1};
    learner = [params](const Dataset& train) { return mine(train, params); };
  } else {
    throw ConfigError("unknown learner '" + config.learner + "' (expected rules or miner)");
  }
  const EvalReport report = cross_validate(data, class_feature, learner, config.folds, seeds, workers);
  if (config.format == "table")
    write_text(config.output, eval_table(report), out);
  else
    write_json(config.output, eval_report_to_json(report), out);
  err << "mean accuracy " << report.mean.accuracy << " over " << report.folds.size() << " folds\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.thresholds.validate();
  std::vector<std::pair<double, double>> grid;
  if (config.tau_a_grid.empty() && config.tau_c_grid.empty()) {
    for (double a : {0.1, 0.2, 0.3, 0.4, 0.5}) grid.emplace_back(a, 0.8);
    for (double c : {0.5, 0.6, 0.7, 0.8, 0.9}) grid.emplace_back(0.5, c);
  } else {
    const auto as = config.tau_a_grid.empty() ? std::vector<double>{config.thresholds.tau_a} : config.tau_a_grid;
    const auto cs = config.tau_c_grid.empty() ? std::vector<double>{config.thresholds.tau_c} : config.tau_c_grid;
    for (double a : as)
      for (double c : cs) grid.emplace_back(a, c);
  }
  for (const auto& [a, c] : grid) {
    check_unit(a, "tau_a");
    check_unit(c, "tau_c");
  }

  const Dataset data = load(config);
  auto backend = make_backend(config);
  const ProbeRun run = probe_model(data, *backend, config.thresholds.max_antecedents, TargetScope::kAllFeatures,
                                   ExtractionOptions{config.workers});
  json points = json::array();
  std::vector<std::pair<std::string, RuleSetSummary>> table;
  for (const auto& [a, c] : grid) {
    Thresholds t = config.thresholds;
    t.tau_a = a;
    t.tau_c = c;
    const RuleSet rules = rules_from_predictions(run, data.universe(), t);
    const RuleSetSummary summary = summarize(rules.rules, data);
    json point = summary_to_json(summary);
    point["tau_a"] = a;
    point["tau_c"] = c;
    points.push_back(std::move(point));
    std::ostringstream label;
    label << "tau_a=" << a << " tau_c=" << c;
    table.emplace_back(label.str(), summary);
  }
  if (config.format == "table") {
    write_text(config.output, summary_table(table), out);
  } else {
    json document = {{"meta",
                      {{"backend", run.backend},
                       {"dataset_digest", run.dataset_digest},
                       {"max_antecedents", config.thresholds.max_antecedents},
                       {"probe_count", run.counters.probes},
                       {"fit_count", run.counters.fits},
                       {"grid_size", grid.size()}}},
                     {"points", std::move(points)}};
    write_json(config.output, document, out);
  }
  err << "swept " << grid.size() << " threshold pairs over one prediction matrix (" << run.counters.fits
      << " fits)\n";
  return kExitOk;
}

void add_data_options(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--input,-i", config.input, "CSV file (categorical cells)")->required();
  cmd.add_flag("--no-header", config.no_header, "First row is data, not a header");
  cmd.add_option("--numeric", config.numeric_columns, "Columns to discretize (equal frequency)")->delimiter(',');
  cmd.add_option("--bins", config.bins, "Bins per numeric column")->check(CLI::PositiveNumber);
}

void add_model_options(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--backend", config.backend, "empirical | bridge:<server command>");
  cmd.add_option("--alpha", config.alpha, "Additive smoothing for the empirical backend")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--tau-a", config.thresholds.tau_a, "Antecedent validation threshold")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--tau-c", config.thresholds.tau_c, "Consequent extraction threshold")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
}

void add_size_option(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--max-antecedents,-a", config.thresholds.max_antecedents, "Maximum antecedent length")
      ->check(CLI::PositiveNumber);
}

void add_output_options(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--output,-o", config.output, "Output file (default: stdout)");
  cmd.add_option("--config", "Flat key=value config file (flags take precedence)");
}

std::string flag_name(const std::string& token) {
  if (token.rfind("--", 0) != 0) return {};
  const auto eq = token.find('=');
  return token.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> config_arguments(const std::string& path, const std::vector<std::string>& explicit_args) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::set<std::string> given;
  for (const auto& token : explicit_args)
    if (auto name = flag_name(token); !name.empty()) given.insert(name);
  std::vector<std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    for (auto& ch : key)
      if (ch == '_') ch = '-';
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
    if (given.count(key) > 0) continue;
    if (value == "true") {
      out.push_back("--" + key);
    } else if (value == "false") {
      continue;
    } else {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Association rule learning from conditional probabilistic models"};
  app.require_subcommand(1);

  auto* learn = app.add_subcommand("learn", "Extract rules (or itemsets) by probing a model");
  add_data_options(*learn, config);
  add_model_options(*learn, config);
  add_size_option(*learn, config);
  add_output_options(*learn, config);
  learn->add_option("--paradigm", config.paradigm, "single (per-feature prediction) | multi (reconstruction)");
  learn->add_flag("--itemsets", config.itemsets, "Learn frequent itemsets instead of rules");
  learn->add_option("--tau-s", config.thresholds.tau_s, "Itemset threshold")->check(CLI::Range(0.0, 1.0));
  learn->add_option("--report", config.report, "Run report JSON (counts, wall time)");
  learn->add_option("--corels", config.corels, "Also write itemsets in the flat one-line-per-itemset format");

  auto* mine_cmd = app.add_subcommand("mine", "Exhaustive support/confidence baseline");
  add_data_options(*mine_cmd, config);
  add_size_option(*mine_cmd, config);
  add_output_options(*mine_cmd, config);
  mine_cmd->add_option("--min-support", config.min_support, "Minimum support")->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_option("--min-confidence", config.min_confidence, "Minimum confidence")->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_flag("--itemsets", config.itemsets, "Emit frequent itemsets instead of rules");
  mine_cmd->add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
  mine_cmd->add_option("--report", config.report, "Run report JSON");
  mine_cmd->add_option("--corels", config.corels, "Also write itemsets in the flat one-line-per-itemset format");

  auto* eval = app.add_subcommand("eval", "Rule quality metrics of a rules file on a dataset");
  add_data_options(*eval, config);
  add_output_options(*eval, config);
  eval->add_option("--rules,-r", config.rules_path, "Rules JSON file")->required();
  eval->add_option("--format", config.format, "json | table")->check(CLI::IsMember({"json", "table"}));

  auto* classify = app.add_subcommand("classify", "Cross-validated rule-list classification");
  add_data_options(*classify, config);
  add_model_options(*classify, config);
  add_size_option(*classify, config);
  add_output_options(*classify, config);
  classify->add_option("--class", config.class_column, "Class column")->required();
  classify->add_option("--learner", config.learner, "rules (model probing) | miner (support baseline)");
  classify->add_option("--min-support", config.min_support, "Miner minimum support")->check(CLI::Range(0.0, 1.0));
  classify->add_option("--min-confidence", config.min_confidence, "Miner minimum confidence")
      ->check(CLI::Range(0.0, 1.0));
  classify->add_option("--folds", config.folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  classify->add_option("--seeds", config.seeds, "Comma-separated seeds")->delimiter(',');
  classify->add_option("--format", config.format, "json | table")->check(CLI::IsMember({"json", "table"}));

  auto* sweep = app.add_subcommand("sweep", "Threshold grid over one shared prediction matrix");
  add_data_options(*sweep, config);
  add_model_options(*sweep, config);
  add_size_option(*sweep, config);
  add_output_options(*sweep, config);
  sweep->add_option("--tau-a-grid", config.tau_a_grid, "Comma-separated tau_a values")->delimiter(',');
  sweep->add_option("--tau-c-grid", config.tau_c_grid, "Comma-separated tau_c values")->delimiter(',');
  sweep->add_option("--format", config.format, "json | table")->check(CLI::IsMember({"json", "table"}));

  try {
    std::vector<std::string> args = raw_args;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      std::string path;
      if (raw_args[i] == "--config" && i + 1 < raw_args.size())
        path = raw_args[i + 1];
      else if (raw_args[i].rfind("--config=", 0) == 0)
        path = raw_args[i].substr(9);
      if (path.empty() || args.empty()) continue;
      auto extra = config_arguments(path, raw_args);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
      break;
    }
    std::vector<char*> argv;
    std::string program = "arl";
    argv.push_back(program.data());
    for (auto& a : args) argv.push_back(a.data());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (learn->parsed()) return cmd_learn(config, out, err);
    if (mine_cmd->parsed()) return cmd_mine(config, out, err);
    if (eval->parsed()) return cmd_eval(config, out, err);
    if (classify->parsed()) return cmd_classify(config, out, err);
    if (sweep->parsed()) return cmd_sweep(config, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const TransportError& e) {
    err << "transport error: " << e.what() << "\n";
    return kExitTransport;
  }
  return kExitConfig;
}

}  // namespace arl::cli
