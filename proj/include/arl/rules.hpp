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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arl/universe.hpp"

namespace arl {

/// X -> y with a single consequent item. Antecedent items are kept sorted by feature
/// and never share a feature with each other or with the consequent.
struct Rule {
  std::vector<ItemId> antecedent;
  ItemId consequent = -1;
  double validity = 0.0;  // model-assigned validity; confidence for count-based rules

  bool same_items(const Rule& other) const {
    return antecedent == other.antecedent && consequent == other.consequent;
  }
};

/// Throws DataError if `rule` breaks the structural invariants.
void check_rule(const Rule& rule, const ItemUniverse& universe);

/// Canonical order: (|X|, antecedent features, antecedent categories, consequent).
bool canonical_less(const Rule& a, const Rule& b, const ItemUniverse& universe);
/// Same key applied to item sets.
bool canonical_less(const std::vector<ItemId>& a, const std::vector<ItemId>& b,
                    const ItemUniverse& universe);

struct Thresholds {
  double tau_a = 0.5;
  double tau_c = 0.8;
  double tau_s = 0.5;
  int max_antecedents = 2;

  /// Throws ConfigError when a value is out of range.
  void validate() const;
};

struct RunCounters {
  std::int64_t feature_sets = 0;
  std::int64_t probes = 0;
  std::int64_t fits = 0;
  std::int64_t predict_calls = 0;
  std::int64_t undefined_antecedents = 0;
};

struct RuleSetMeta {
  std::string backend;
  std::string dataset_digest;
  std::string fit_strategy;
  Thresholds thresholds;
  RunCounters counters;
};

struct RuleSet {
  std::vector<Rule> rules;
  RuleSetMeta meta;

  std::size_t size() const { return rules.size(); }
  bool empty() const { return rules.empty(); }
};

/// Sorts canonically and merges duplicate (X, y) pairs keeping the largest validity.
void canonicalize(std::vector<Rule>& rules, const ItemUniverse& universe);

struct FrequentItemset {
  std::vector<ItemId> items;
  double score = 0.0;  // min predicted probability (model) or support (counting)
};

void canonicalize(std::vector<FrequentItemset>& itemsets, const ItemUniverse& universe);

}  // namespace arl
