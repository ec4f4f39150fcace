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

#include "arl/miner.hpp"

#include <algorithm>
#include <map>

#include "arl/error.hpp"
#include "arl/parallel.hpp"
#include "arl/tidset.hpp"

namespace arl {

void MinerParams::validate() const {
  if (!(min_support >= 0.0 && min_support <= 1.0))
    throw ConfigError("min support must lie in [0,1], got " + std::to_string(min_support));
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0))
    throw ConfigError("min confidence must lie in [0,1], got " + std::to_string(min_confidence));
  if (max_antecedents < 1) throw ConfigError("max antecedents must be >= 1");
}

namespace {

struct Candidate {
  std::vector<ItemId> items;  // ascending, hence ascending by feature
  TidSet rows;
  std::size_t count = 0;
};

using Level = std::vector<Candidate>;

/// Frequent itemsets per level; levels[L] holds sets of size L + 1.
std::vector<Level> levelwise(const Dataset& dataset, double min_support, int max_size, bool keep_empty,
                             int workers) {
  const auto& universe = dataset.universe();
  const double n = dataset.row_count();
  auto frequent = [&](std::size_t count) {
    if (count == 0 && !keep_empty) return false;
    return static_cast<double>(count) / n >= min_support;
  };

  const auto item_rows = dataset.item_tidsets();
  std::vector<Level> levels;
  Level first;
  for (ItemId i = 0; i < universe.item_count(); ++i) {
    const auto& rows = item_rows[static_cast<std::size_t>(i)];
    const auto count = rows.count();
    if (frequent(count)) first.push_back(Candidate{{i}, rows, count});
  }
  levels.push_back(std::move(first));

  for (int size = 2; size <= max_size && !levels.back().empty(); ++size) {
    const Level& prev = levels.back();
    std::map<std::vector<ItemId>, std::size_t> index;
    for (std::size_t i = 0; i < prev.size(); ++i) index.emplace(prev[i].items, i);

    // Join sets sharing their first size-2 items; the last items must come from
    // different features, the second one's feature being larger.
    std::vector<std::pair<std::size_t, std::size_t>> joins;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::size_t j = i + 1; j < prev.size(); ++j) {
        const auto& a = prev[i].items;
        const auto& b = prev[j].items;
        if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
        if (universe.feature_of(a.back()) >= universe.feature_of(b.back())) continue;
        std::vector<ItemId> merged = a;
        merged.push_back(b.back());
        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < merged.size() && closed; ++drop) {
          std::vector<ItemId> subset;
          for (std::size_t t = 0; t < merged.size(); ++t)
            if (t != drop) subset.push_back(merged[t]);
          closed = index.count(subset) > 0;
        }
        if (closed) joins.emplace_back(i, j);
      }
    }

    std::vector<Candidate> counted(joins.size());
    parallel_for(joins.size(), workers, [&](std::size_t t) {
      const auto& a = prev[joins[t].first];
      const auto& b = prev[joins[t].second];
      Candidate c;
      c.items = a.items;
      c.items.push_back(b.items.back());
      c.rows = a.rows & b.rows;
      c.count = c.rows.count();
      counted[t] = std::move(c);
    });
    Level next;
    for (auto& c : counted)
      if (frequent(c.count)) next.push_back(std::move(c));
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace

RuleSet mine(const Dataset& dataset, const MinerParams& params) {
  params.validate();
  if (dataset.row_count() == 0) throw DataError("dataset is empty");
  const auto& universe = dataset.universe();
  const int max_size = std::min(params.max_antecedents + 1, universe.feature_count());
  const auto levels = levelwise(dataset, params.min_support, max_size, true, params.workers);

  std::map<std::vector<ItemId>, std::size_t> counts;
  for (const auto& level : levels)
    for (const auto& c : level) counts.emplace(c.items, c.count);

  RuleSet out;
  out.meta.backend = "levelwise-support-miner";
  out.meta.dataset_digest = dataset.digest();
  out.meta.fit_strategy = "none";
  out.meta.thresholds.max_antecedents = params.max_antecedents;
  out.meta.thresholds.tau_c = params.min_confidence;
  for (std::size_t L = 1; L < levels.size(); ++L) {
    for (const auto& z : levels[L]) {
      for (std::size_t j = 0; j < z.items.size(); ++j) {
        std::vector<ItemId> antecedent;
        for (std::size_t t = 0; t < z.items.size(); ++t)
          if (t != j) antecedent.push_back(z.items[t]);
        const auto x_count = counts.at(antecedent);
        if (x_count == 0) continue;
        const double conf = static_cast<double>(z.count) / static_cast<double>(x_count);
        if (conf >= params.min_confidence) out.rules.push_back(Rule{std::move(antecedent), z.items[j], conf});
      }
    }
  }
  canonicalize(out.rules, universe);
  return out;
}

std::vector<FrequentItemset> mine_itemsets(const Dataset& dataset, double min_support, int max_size, int workers) {
  if (!(min_support >= 0.0 && min_support <= 1.0))
    throw ConfigError("min support must lie in [0,1], got " + std::to_string(min_support));
  if (max_size < 1) throw ConfigError("max itemset size must be >= 1");
  if (dataset.row_count() == 0) throw DataError("dataset is empty");
  const auto levels = levelwise(dataset, min_support, std::min(max_size, dataset.feature_count()), false, workers);
  std::vector<FrequentItemset> out;
  const double n = dataset.row_count();
  for (const auto& level : levels)
    for (const auto& c : level) out.push_back(FrequentItemset{c.items, static_cast<double>(c.count) / n});
  canonicalize(out, dataset.universe());
  return out;
}

}  // namespace arl
