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

#include "arl/rules.hpp"

#include <algorithm>

#include "arl/error.hpp"

namespace arl {

void check_rule(const Rule& rule, const ItemUniverse& universe) {
  const int m = universe.item_count();
  if (rule.antecedent.empty()) throw DataError("rule has an empty antecedent");
  if (rule.consequent < 0 || rule.consequent >= m) throw DataError("rule consequent out of range");
  const FeatureId consequent_feature = universe.feature_of(rule.consequent);
  FeatureId previous = -1;
  for (ItemId item : rule.antecedent) {
    if (item < 0 || item >= m) throw DataError("rule antecedent item out of range");
    const FeatureId f = universe.feature_of(item);
    if (f <= previous) throw DataError("rule antecedent items must have distinct, ascending features");
    if (f == consequent_feature) throw DataError("rule consequent shares a feature with its antecedent");
    previous = f;
  }
}

bool canonical_less(const std::vector<ItemId>& a, const std::vector<ItemId>& b, const ItemUniverse& universe) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const FeatureId fa = universe.feature_of(a[i]);
    const FeatureId fb = universe.feature_of(b[i]);
    if (fa != fb) return fa < fb;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool canonical_less(const Rule& a, const Rule& b, const ItemUniverse& universe) {
  if (canonical_less(a.antecedent, b.antecedent, universe)) return true;
  if (canonical_less(b.antecedent, a.antecedent, universe)) return false;
  return a.consequent < b.consequent;
}

void Thresholds::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(tau_a)) throw ConfigError("tau_a must lie in [0,1], got " + std::to_string(tau_a));
  if (!in_unit(tau_c)) throw ConfigError("tau_c must lie in [0,1], got " + std::to_string(tau_c));
  if (!in_unit(tau_s)) throw ConfigError("tau_s must lie in [0,1], got " + std::to_string(tau_s));
  if (max_antecedents < 1) throw ConfigError("max antecedents must be >= 1");
}

void canonicalize(std::vector<Rule>& rules, const ItemUniverse& universe) {
  std::stable_sort(rules.begin(), rules.end(),
                   [&](const Rule& a, const Rule& b) { return canonical_less(a, b, universe); });
  std::vector<Rule> merged;
  merged.reserve(rules.size());
  for (auto& rule : rules) {
    if (!merged.empty() && merged.back().same_items(rule))
      merged.back().validity = std::max(merged.back().validity, rule.validity);
    else
      merged.push_back(std::move(rule));
  }
  rules = std::move(merged);
}

void canonicalize(std::vector<FrequentItemset>& itemsets, const ItemUniverse& universe) {
  std::stable_sort(itemsets.begin(), itemsets.end(), [&](const FrequentItemset& a, const FrequentItemset& b) {
    return canonical_less(a.items, b.items, universe);
  });
  std::vector<FrequentItemset> merged;
  merged.reserve(itemsets.size());
  for (auto& set : itemsets) {
    if (!merged.empty() && merged.back().items == set.items)
      merged.back().score = std::max(merged.back().score, set.score);
    else
      merged.push_back(std::move(set));
  }
  itemsets = std::move(merged);
}

}  // namespace arl
