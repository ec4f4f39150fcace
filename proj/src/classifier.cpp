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

#include "arl/classifier.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "arl/error.hpp"
#include "arl/metrics.hpp"
#include "arl/parallel.hpp"

namespace arl {

bool rule_list_before(const ClassRule& a, const ClassRule& b, const ItemUniverse& universe) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.support != b.support) return a.support > b.support;
  if (a.rule.antecedent.size() != b.rule.antecedent.size())
    return a.rule.antecedent.size() < b.rule.antecedent.size();
  return canonical_less(a.rule, b.rule, universe);
}

namespace {

bool matches(const ClassRule& rule, std::span<const int> row_codes) {
  for (const auto& [feature, category] : rule.conditions)
    if (row_codes[static_cast<std::size_t>(feature)] != category) return false;
  return true;
}

std::vector<int> codes_of(const Dataset& dataset, int row) {
  std::vector<int> codes(static_cast<std::size_t>(dataset.feature_count()));
  for (FeatureId f = 0; f < dataset.feature_count(); ++f) codes[static_cast<std::size_t>(f)] = dataset.code(row, f);
  return codes;
}

}  // namespace

RuleList build_rule_list(const RuleSet& ruleset, const Dataset& train, FeatureId class_feature) {
  const auto& universe = train.universe();
  if (class_feature < 0 || class_feature >= universe.feature_count())
    throw ConfigError("class feature index out of range");
  if (train.row_count() == 0) throw DataError("training set is empty");

  const RuleEvaluator evaluator(train);
  std::vector<ClassRule> candidates;
  for (const auto& rule : ruleset.rules) {
    if (universe.feature_of(rule.consequent) != class_feature) continue;
    const auto conf = evaluator.confidence(rule);
    if (!conf) continue;  // antecedent absent from the training rows
    ClassRule entry{rule, *conf, evaluator.support(rule), {}, universe.category_of(rule.consequent)};
    for (ItemId item : rule.antecedent) entry.conditions.emplace_back(universe.feature_of(item), universe.category_of(item));
    candidates.push_back(std::move(entry));
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const ClassRule& a, const ClassRule& b) { return rule_list_before(a, b, universe); });

  RuleList list;
  list.class_feature = class_feature;
  const int n = train.row_count();
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) rows.push_back(codes_of(train, r));

  for (auto& candidate : candidates) {
    std::vector<int> hits;
    bool correct = false;
    for (int r = 0; r < n; ++r) {
      const auto ru = static_cast<std::size_t>(r);
      if (covered[ru] || !matches(candidate, rows[ru])) continue;
      hits.push_back(r);
      if (train.code(r, class_feature) == candidate.predicted_class) correct = true;
    }
    if (!correct) continue;
    for (int r : hits) covered[static_cast<std::size_t>(r)] = true;
    list.rules.push_back(std::move(candidate));
  }

  const auto classes = static_cast<std::size_t>(universe.cardinality(class_feature));
  std::vector<int> global(classes, 0);
  std::vector<int> uncovered(classes, 0);
  for (int r = 0; r < n; ++r) {
    const auto c = static_cast<std::size_t>(train.code(r, class_feature));
    ++global[c];
    if (!covered[static_cast<std::size_t>(r)]) ++uncovered[c];
  }
  const bool any_uncovered = std::any_of(uncovered.begin(), uncovered.end(), [](int v) { return v > 0; });
  const auto& votes = any_uncovered ? uncovered : global;
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes; ++c)
    if (votes[c] > votes[best] || (votes[c] == votes[best] && global[c] > global[best])) best = c;
  list.default_class = static_cast<int>(best);
  list.default_only = list.rules.empty();
  return list;
}

int predict(const RuleList& list, std::span<const int> row_codes) {
  for (const auto& rule : list.rules)
    if (matches(rule, row_codes)) return rule.predicted_class;
  return list.default_class;
}

int predict(const RuleList& list, const Dataset& dataset, int row) {
  const auto codes = codes_of(dataset, row);
  return predict(list, codes);
}

ClassificationScores score_predictions(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw DataError("truth and prediction lengths differ");
  ClassificationScores out;
  if (truth.empty()) return out;
  std::set<int> labels(truth.begin(), truth.end());
  labels.insert(predicted.begin(), predicted.end());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] == predicted[i]) ++correct;
  out.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  for (int label : labels) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool is_true = truth[i] == label;
      const bool is_pred = predicted[i] == label;
      if (is_true && is_pred) ++tp;
      else if (is_pred) ++fp;
      else if (is_true) ++fn;
    }
    const double precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    const double recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    const double f1 = precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    out.precision += precision;
    out.recall += recall;
    out.f1 += f1;
  }
  const auto count = static_cast<double>(labels.size());
  out.precision /= count;
  out.recall /= count;
  out.f1 /= count;
  return out;
}

namespace {

// Unbiased draw in [0, bound) by rejection; independent of the standard library's
// distribution implementations so fold assignment is portable.
std::uint64_t draw_below(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound + 1) % bound;
  for (;;) {
    const std::uint64_t v = engine();
    if (v <= limit) return v % bound;
  }
}

}  // namespace

std::vector<std::vector<int>> stratified_folds(const Dataset& dataset, FeatureId class_feature, int folds,
                                               std::uint64_t seed) {
  if (folds < 2) throw ConfigError("folds must be >= 2");
  const auto& universe = dataset.universe();
  if (class_feature < 0 || class_feature >= universe.feature_count())
    throw ConfigError("class feature index out of range");
  const int n = dataset.row_count();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 engine(seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw_below(engine, i)]);

  const int classes = universe.cardinality(class_feature);
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(classes));
  for (int r : order) by_class[static_cast<std::size_t>(dataset.code(r, class_feature))].push_back(r);

  const auto present = std::count_if(by_class.begin(), by_class.end(), [](const auto& v) { return !v.empty(); });
  if (present < 2) {
    const auto only = std::find_if(by_class.begin(), by_class.end(), [](const auto& v) { return !v.empty(); });
    const auto c = static_cast<std::size_t>(only - by_class.begin());
    throw DataError("cannot stratify: class '" + universe.feature(class_feature).categories[c] +
                    "' is the only class present");
  }

  std::vector<std::vector<int>> out(static_cast<std::size_t>(folds));
  std::size_t next = 0;
  for (int c = 0; c < classes; ++c) {
    const auto& members = by_class[static_cast<std::size_t>(c)];
    if (members.empty()) continue;
    if (static_cast<int>(members.size()) < folds)
      throw DataError("class '" + universe.feature(class_feature).categories[static_cast<std::size_t>(c)] +
                      "' has " + std::to_string(members.size()) + " rows, fewer than " + std::to_string(folds) +
                      " folds");
    for (int r : members) {
      out[next].push_back(r);
      next = (next + 1) % static_cast<std::size_t>(folds);
    }
  }
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

EvalReport cross_validate(const Dataset& dataset, FeatureId class_feature, const RuleLearner& learner, int folds,
                          std::span<const std::uint64_t> seeds, int workers) {
  if (seeds.empty()) throw ConfigError("seed list is empty");
  if (folds < 2) throw ConfigError("folds must be >= 2");

  std::vector<std::vector<std::vector<int>>> splits;
  for (auto seed : seeds) splits.push_back(stratified_folds(dataset, class_feature, folds, seed));

  EvalReport report;
  report.fold_count = folds;
  report.seeds.assign(seeds.begin(), seeds.end());
  report.folds.resize(seeds.size() * static_cast<std::size_t>(folds));

  parallel_for(report.folds.size(), workers, [&](std::size_t task) {
    const std::size_t s = task / static_cast<std::size_t>(folds);
    const int fold = static_cast<int>(task % static_cast<std::size_t>(folds));
    const auto& parts = splits[s];
    std::vector<int> train_rows;
    for (int f = 0; f < folds; ++f)
      if (f != fold) train_rows.insert(train_rows.end(), parts[static_cast<std::size_t>(f)].begin(),
                                       parts[static_cast<std::size_t>(f)].end());
    std::sort(train_rows.begin(), train_rows.end());
    const auto& test_rows = parts[static_cast<std::size_t>(fold)];

    const Dataset train = dataset.select_rows(train_rows);
    const RuleSet rules = learner(train);
    const RuleList list = build_rule_list(rules, train, class_feature);

    std::vector<int> truth;
    std::vector<int> predicted;
    for (int r : test_rows) {
      truth.push_back(dataset.code(r, class_feature));
      predicted.push_back(predict(list, dataset, r));
    }
    auto& out = report.folds[task];
    out.seed = seeds[s];
    out.fold = fold;
    out.scores = score_predictions(truth, predicted);
    out.learned_rules = rules.size();
    out.list_length = list.rules.size();
    out.default_only = list.default_only;
  });

  const auto count = static_cast<double>(report.folds.size());
  for (const auto& f : report.folds) {
    report.mean.accuracy += f.scores.accuracy;
    report.mean.precision += f.scores.precision;
    report.mean.recall += f.scores.recall;
    report.mean.f1 += f.scores.f1;
    report.mean_rules += static_cast<double>(f.learned_rules);
    report.mean_list_length += static_cast<double>(f.list_length);
  }
  report.mean.accuracy /= count;
  report.mean.precision /= count;
  report.mean.recall /= count;
  report.mean.f1 /= count;
  report.mean_rules /= count;
  report.mean_list_length /= count;
  return report;
}

}  // namespace arl
