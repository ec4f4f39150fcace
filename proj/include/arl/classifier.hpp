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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/rules.hpp"

namespace arl {

/// Fixed execution seeds used when no seed list is given.
inline constexpr std::array<std::uint64_t, 10> kDefaultSeeds = {
    42,        1608637542, 1273642419, 1935803228, 787846414,
    996406378, 1201263687, 423734972,  415968276,  670094950};

struct ClassRule {
  Rule rule;
  double confidence = 0.0;  // on the training data
  double support = 0.0;
  std::vector<std::pair<FeatureId, int>> conditions;  // antecedent as (feature, category)
  int predicted_class = 0;                            // category of the class feature
};

/// Ordered class rules followed by a default class; the first matching rule wins.
struct RuleList {
  FeatureId class_feature = -1;
  std::vector<ClassRule> rules;
  int default_class = 0;  // category index of the class feature
  bool default_only = false;
};

/// Rule-list sort key: confidence desc, support desc, |X| asc, then canonical order.
bool rule_list_before(const ClassRule& a, const ClassRule& b, const ItemUniverse& universe);

/// Sequential covering over `train`: rules with a class consequent are sorted by
/// rule_list_before and kept when they correctly classify at least one uncovered
/// row; the default is the majority class of what remains uncovered.
RuleList build_rule_list(const RuleSet& ruleset, const Dataset& train, FeatureId class_feature);

/// Class category predicted for one row given as category codes per feature.
int predict(const RuleList& list, std::span<const int> row_codes);
int predict(const RuleList& list, const Dataset& dataset, int row);

/// Macro-averaged scores over the classes occurring in truth or predictions.
/// Per-class precision/recall/F1 with a zero denominator count as 0.
struct ClassificationScores {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};
ClassificationScores score_predictions(std::span<const int> truth, std::span<const int> predicted);

/// Seeded shuffle followed by round-robin dealing of each class's rows into folds.
/// Throws DataError naming the class when it has fewer rows than folds or is the
/// only class present.
std::vector<std::vector<int>> stratified_folds(const Dataset& dataset, FeatureId class_feature, int folds,
                                               std::uint64_t seed);

struct FoldResult {
  std::uint64_t seed = 0;
  int fold = 0;
  ClassificationScores scores;
  std::size_t learned_rules = 0;
  std::size_t list_length = 0;
  bool default_only = false;
};

struct EvalReport {
  std::vector<FoldResult> folds;  // ordered by (seed, fold)
  ClassificationScores mean;
  int fold_count = 0;
  std::vector<std::uint64_t> seeds;
  bool stratified = true;
  double mean_rules = 0.0;
  double mean_list_length = 0.0;
};

/// Learns a rule set from a training split.
using RuleLearner = std::function<RuleSet(const Dataset& train)>;

/// For every seed and fold: learn on the training folds, build the rule list, score
/// the held-out fold. Seeds and folds run in parallel when `workers` > 1 and the
/// learner tolerates it; the report is identical either way.
EvalReport cross_validate(const Dataset& dataset, FeatureId class_feature, const RuleLearner& learner, int folds,
                          std::span<const std::uint64_t> seeds, int workers = 1);

}  // namespace arl
