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

#include "arl/serialize.hpp"

#include <iomanip>
#include <sstream>

#include "arl/error.hpp"

namespace arl {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json item_json(const ItemUniverse& universe, ItemId item) {
  const auto& def = universe.feature(universe.feature_of(item));
  return json{{"feature", def.name}, {"value", def.categories[static_cast<std::size_t>(universe.category_of(item))]}};
}

ItemId item_from_json(const json& j, const ItemUniverse& universe) {
  if (!j.is_object() || !j.contains("feature") || !j.contains("value") || !j["feature"].is_string() ||
      !j["value"].is_string())
    throw DataError("item must be an object with string fields \"feature\" and \"value\"");
  const auto feature = j["feature"].get<std::string>();
  const auto value = j["value"].get<std::string>();
  if (auto item = universe.find_item(feature, value)) return *item;
  throw DataError("unknown item " + feature + "=" + value);
}

}  // namespace

json dataset_summary(const Dataset& dataset) {
  json features = json::array();
  for (const auto& def : dataset.universe().features())
    features.push_back(json{{"name", def.name}, {"categories", def.categories}});
  return json{{"features", std::move(features)}, {"n", dataset.row_count()}, {"m", dataset.universe().item_count()}};
}

json ruleset_to_json(const RuleSet& ruleset, const Dataset& dataset) {
  const auto& universe = dataset.universe();
  const RuleEvaluator evaluator(dataset);
  const auto& t = ruleset.meta.thresholds;
  const auto& c = ruleset.meta.counters;
  json meta = {
      {"backend", ruleset.meta.backend},
      {"thresholds", {{"tau_a", t.tau_a}, {"tau_c", t.tau_c}, {"max_antecedents", t.max_antecedents}}},
      {"dataset_digest", ruleset.meta.dataset_digest},
      {"probe_count", c.probes},
      {"fit_count", c.fits},
      {"feature_sets", c.feature_sets},
      {"undefined_antecedents", c.undefined_antecedents},
      {"fit_strategy", ruleset.meta.fit_strategy},
  };
  json rules = json::array();
  for (const auto& rule : ruleset.rules) {
    json antecedent = json::array();
    for (ItemId item : rule.antecedent) antecedent.push_back(item_json(universe, item));
    const RuleStats stats = evaluator.stats(rule);
    rules.push_back(json{{"antecedent", std::move(antecedent)},
                         {"consequent", item_json(universe, rule.consequent)},
                         {"validity", rule.validity},
                         {"support", stats.support},
                         {"confidence", optional_number(stats.confidence)},
                         {"zhang", optional_number(stats.zhang)},
                         {"interestingness", optional_number(stats.interestingness)}});
  }
  return json{{"meta", std::move(meta)}, {"rules", std::move(rules)}};
}

RuleSet ruleset_from_json(const json& document, const ItemUniverse& universe) {
  if (!document.is_object() || !document.contains("rules") || !document["rules"].is_array())
    throw DataError("rules document must be an object with a \"rules\" array");
  RuleSet out;
  if (document.contains("meta") && document["meta"].is_object()) {
    const auto& meta = document["meta"];
    out.meta.backend = meta.value("backend", "");
    out.meta.dataset_digest = meta.value("dataset_digest", "");
    out.meta.fit_strategy = meta.value("fit_strategy", "");
    if (meta.contains("thresholds") && meta["thresholds"].is_object()) {
      const auto& t = meta["thresholds"];
      out.meta.thresholds.tau_a = t.value("tau_a", out.meta.thresholds.tau_a);
      out.meta.thresholds.tau_c = t.value("tau_c", out.meta.thresholds.tau_c);
      out.meta.thresholds.max_antecedents = t.value("max_antecedents", out.meta.thresholds.max_antecedents);
    }
    out.meta.counters.probes = meta.value("probe_count", std::int64_t{0});
    out.meta.counters.fits = meta.value("fit_count", std::int64_t{0});
  }
  for (const auto& entry : document["rules"]) {
    if (!entry.is_object() || !entry.contains("antecedent") || !entry["antecedent"].is_array() ||
        !entry.contains("consequent"))
      throw DataError("rule entries need \"antecedent\" and \"consequent\"");
    Rule rule;
    for (const auto& item : entry["antecedent"]) rule.antecedent.push_back(item_from_json(item, universe));
    std::sort(rule.antecedent.begin(), rule.antecedent.end());
    rule.consequent = item_from_json(entry["consequent"], universe);
    if (entry.contains("validity") && entry["validity"].is_number()) rule.validity = entry["validity"].get<double>();
    check_rule(rule, universe);
    out.rules.push_back(std::move(rule));
  }
  canonicalize(out.rules, universe);
  return out;
}

json itemsets_to_json(const std::vector<FrequentItemset>& itemsets, const ItemUniverse& universe) {
  json list = json::array();
  for (const auto& set : itemsets) {
    json items = json::array();
    for (ItemId item : set.items) items.push_back(item_json(universe, item));
    list.push_back(json{{"items", std::move(items)}, {"score", set.score}});
  }
  return json{{"itemsets", std::move(list)}};
}

namespace {

std::string corels_line(const std::string& label, const std::vector<ItemId>& items, const Dataset& dataset) {
  std::string line = "{" + label + "}";
  for (int r = 0; r < dataset.row_count(); ++r) {
    bool all = true;
    for (ItemId item : items)
      if (!dataset.row_contains(r, item)) {
        all = false;
        break;
      }
    line += all ? " 1" : " 0";
  }
  return line + "\n";
}

}  // namespace

std::string itemsets_to_corels(const std::vector<FrequentItemset>& itemsets, const Dataset& dataset) {
  const auto& universe = dataset.universe();
  std::string out;
  for (const auto& set : itemsets) {
    std::string label;
    for (std::size_t i = 0; i < set.items.size(); ++i) {
      if (i > 0) label += ",";
      label += universe.item_label(set.items[i]);
    }
    out += corels_line(label, set.items, dataset);
  }
  return out;
}

std::string labels_to_corels(const Dataset& dataset, FeatureId class_feature) {
  const auto& universe = dataset.universe();
  std::string out;
  for (int c = 0; c < universe.cardinality(class_feature); ++c) {
    const ItemId item = universe.item(class_feature, c);
    out += corels_line(universe.item_label(item), {item}, dataset);
  }
  return out;
}

namespace {

json mean_json(const MetricMean& m) {
  return json{{"mean", optional_number(m.mean)}, {"defined", m.defined}, {"undefined", m.undefined}};
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << *v;
  return os.str();
}

std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], row[c].size());
    }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0)
        os << std::left << std::setw(static_cast<int>(widths[c])) << row[c];
      else
        os << "  " << std::right << std::setw(static_cast<int>(widths[c])) << row[c];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

json summary_to_json(const RuleSetSummary& summary) {
  return json{{"rule_count", summary.rule_count},
              {"support", mean_json(summary.support)},
              {"confidence", mean_json(summary.confidence)},
              {"zhang", mean_json(summary.zhang)},
              {"interestingness", mean_json(summary.interestingness)},
              {"coverage", summary.coverage}};
}

std::string summary_table(const std::vector<std::pair<std::string, RuleSetSummary>>& rows) {
  std::vector<std::vector<std::string>> cells = {
      {"Algorithm", "# Rules", "Support", "Confidence", "Zhang", "Interestingness", "Coverage"}};
  for (const auto& [label, s] : rows)
    cells.push_back({label, std::to_string(s.rule_count), cell(s.support.mean), cell(s.confidence.mean),
                     cell(s.zhang.mean), cell(s.interestingness.mean), cell(s.coverage)});
  return render_columns(cells);
}

namespace {

json scores_json(const ClassificationScores& s) {
  return json{{"accuracy", s.accuracy}, {"f1", s.f1}, {"precision", s.precision}, {"recall", s.recall}};
}

}  // namespace

json eval_report_to_json(const EvalReport& report) {
  json folds = json::array();
  for (const auto& f : report.folds)
    folds.push_back(json{{"seed", f.seed},
                         {"fold", f.fold},
                         {"scores", scores_json(f.scores)},
                         {"learned_rules", f.learned_rules},
                         {"list_length", f.list_length},
                         {"default_only", f.default_only}});
  return json{{"mean", scores_json(report.mean)},
              {"folds", report.fold_count},
              {"seeds", report.seeds},
              {"stratified", report.stratified},
              {"mean_rules", report.mean_rules},
              {"mean_list_length", report.mean_list_length},
              {"per_fold", std::move(folds)}};
}

std::string eval_table(const EvalReport& report) {
  std::vector<std::vector<std::string>> cells = {{"Seed", "Fold", "Accuracy", "F1", "Precision", "Recall", "# Rules"}};
  for (const auto& f : report.folds)
    cells.push_back({std::to_string(f.seed), std::to_string(f.fold), cell(f.scores.accuracy), cell(f.scores.f1),
                     cell(f.scores.precision), cell(f.scores.recall), std::to_string(f.list_length)});
  cells.push_back({"mean", "", cell(report.mean.accuracy), cell(report.mean.f1), cell(report.mean.precision),
                   cell(report.mean.recall), cell(report.mean_list_length)});
  return render_columns(cells);
}

}  // namespace arl
