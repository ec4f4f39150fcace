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

// Brute-force reference computations for tests. Everything here scans rows of the
// code matrix directly and shares no code path with the library beyond Dataset
// accessors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/rules.hpp"

namespace arl::testing {

/// (feature, category) pairs; ascending by feature.
using Pattern = std::vector<std::pair<int, int>>;

inline long scan_count(const Dataset& d, const Pattern& p) {
  long count = 0;
  for (int r = 0; r < d.row_count(); ++r) {
    bool all = true;
    for (const auto& [f, c] : p)
      if (d.code(r, f) != c) {
        all = false;
        break;
      }
    if (all) ++count;
  }
  return count;
}

/// count(p ∪ {target}) / count(p); nullopt when count(p) == 0.
inline std::optional<double> scan_conditional(const Dataset& d, const Pattern& p, std::pair<int, int> target) {
  const long base = scan_count(d, p);
  if (base == 0) return std::nullopt;
  Pattern joint = p;
  joint.push_back(target);
  return static_cast<double>(scan_count(d, joint)) / static_cast<double>(base);
}

inline Pattern without_feature(const Pattern& p, int feature) {
  Pattern out;
  for (const auto& e : p)
    if (e.first != feature) out.push_back(e);
  return out;
}

/// Calls fn for every pattern with 1..max_size items over distinct features.
inline void for_each_pattern(const ItemUniverse& u, int max_size, const std::function<void(const Pattern&)>& fn) {
  Pattern current;
  std::function<void(int)> rec = [&](int next_feature) {
    if (!current.empty()) fn(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (int f = next_feature; f < u.feature_count(); ++f)
      for (int c = 0; c < u.cardinality(f); ++c) {
        current.emplace_back(f, c);
        rec(f + 1);
        current.pop_back();
      }
  };
  rec(0);
}

inline std::vector<ItemId> to_items(const ItemUniverse& u, const Pattern& p) {
  std::vector<ItemId> items;
  for (const auto& [f, c] : p) items.push_back(u.offset(f) + c);
  return items;
}

/// (antecedent items, consequent item, validity)
using RuleKey = std::tuple<std::vector<ItemId>, ItemId, double>;

inline std::set<RuleKey> rule_keys(const std::vector<Rule>& rules) {
  std::set<RuleKey> out;
  for (const auto& r : rules) out.emplace(r.antecedent, r.consequent, r.validity);
  return out;
}

/// Rows matching p, plus per-(feature, category) counts among those rows.
struct PatternCounts {
  long matched = 0;
  std::vector<std::vector<long>> joint;
};

inline PatternCounts scan_pattern(const Dataset& d, const Pattern& p) {
  const auto& u = d.universe();
  PatternCounts out;
  for (int f = 0; f < u.feature_count(); ++f) out.joint.emplace_back(static_cast<std::size_t>(u.cardinality(f)), 0);
  for (int r = 0; r < d.row_count(); ++r) {
    bool all = true;
    for (const auto& [f, c] : p)
      if (d.code(r, f) != c) {
        all = false;
        break;
      }
    if (!all) continue;
    ++out.matched;
    for (int f = 0; f < u.feature_count(); ++f) ++out.joint[static_cast<std::size_t>(f)][static_cast<std::size_t>(d.code(r, f))];
  }
  return out;
}

inline bool spans(const Pattern& x, int f) {
  return std::any_of(x.begin(), x.end(), [&](const auto& e) { return e.first == f; });
}

/// Rules X -> y with conf(X -> y) >= tau_c and, for every feature f of X,
/// conf(X minus f -> x_f) >= tau_a (an undefined conditional counts as 0).
/// Validity is conf(X -> y).
inline std::set<RuleKey> oracle_rules(const Dataset& d, int max_antecedents, double tau_a, double tau_c) {
  const auto& u = d.universe();
  std::set<RuleKey> out;
  for_each_pattern(u, max_antecedents, [&](const Pattern& x) {
    for (const auto& item : x) {
      const auto score = scan_conditional(d, without_feature(x, item.first), item);
      if (score.value_or(0.0) < tau_a) return;
    }
    const PatternCounts counts = scan_pattern(d, x);
    if (counts.matched == 0) return;
    for (int f = 0; f < u.feature_count(); ++f) {
      if (spans(x, f)) continue;
      for (int c = 0; c < u.cardinality(f); ++c) {
        const double conf = static_cast<double>(counts.joint[static_cast<std::size_t>(f)][static_cast<std::size_t>(c)]) /
                            static_cast<double>(counts.matched);
        if (conf >= tau_c) out.emplace(to_items(u, x), u.offset(f) + c, conf);
      }
    }
  });
  return out;
}

/// Itemsets whose every leave-one-feature-out conditional is defined and >= tau_s;
/// paired with the minimum of those conditionals.
inline std::set<std::pair<std::vector<ItemId>, double>> oracle_itemsets(const Dataset& d, int max_size, double tau_s) {
  const auto& u = d.universe();
  std::set<std::pair<std::vector<ItemId>, double>> out;
  for_each_pattern(u, max_size, [&](const Pattern& x) {
    double score = 1.0;
    for (const auto& item : x) {
      const auto p = scan_conditional(d, without_feature(x, item.first), item);
      if (!p || *p < tau_s) return;
      score = std::min(score, *p);
    }
    out.emplace(to_items(u, x), score);
  });
  return out;
}

/// Double loop over all candidate rules: count(X) > 0, support >= min_support,
/// confidence >= min_confidence.
inline std::set<RuleKey> oracle_miner(const Dataset& d, int max_antecedents, double min_support,
                                      double min_confidence) {
  const auto& u = d.universe();
  const double n = d.row_count();
  std::set<RuleKey> out;
  for_each_pattern(u, max_antecedents, [&](const Pattern& x) {
    const PatternCounts counts = scan_pattern(d, x);
    if (counts.matched == 0) return;
    for (int f = 0; f < u.feature_count(); ++f) {
      if (spans(x, f)) continue;
      for (int c = 0; c < u.cardinality(f); ++c) {
        const long both = counts.joint[static_cast<std::size_t>(f)][static_cast<std::size_t>(c)];
        const double conf = static_cast<double>(both) / static_cast<double>(counts.matched);
        if (static_cast<double>(both) / n >= min_support && conf >= min_confidence)
          out.emplace(to_items(u, x), u.offset(f) + c, conf);
      }
    }
  });
  return out;
}

inline std::set<std::pair<std::vector<ItemId>, double>> oracle_support_itemsets(const Dataset& d, int max_size,
                                                                                double min_support) {
  std::set<std::pair<std::vector<ItemId>, double>> out;
  const double n = d.row_count();
  for_each_pattern(d.universe(), max_size, [&](const Pattern& x) {
    const long count = scan_count(d, x);
    if (count > 0 && static_cast<double>(count) / n >= min_support)
      out.emplace(to_items(d.universe(), x), static_cast<double>(count) / n);
  });
  return out;
}

// ---- metric oracles, one transaction at a time ----

inline bool row_has(const Dataset& d, int r, const ItemUniverse& u, ItemId item) {
  return d.code(r, u.feature_of(item)) == item - u.offset(u.feature_of(item));
}

inline bool row_has_all(const Dataset& d, int r, const std::vector<ItemId>& items) {
  const auto& u = d.universe();
  return std::all_of(items.begin(), items.end(), [&](ItemId i) { return row_has(d, r, u, i); });
}

struct ScanStats {
  double support;
  std::optional<double> confidence, zhang, interestingness;
};

inline ScanStats scan_stats(const Dataset& d, const Rule& rule) {
  const auto& u = d.universe();
  long x = 0, y = 0, xy = 0, not_x = 0, not_x_y = 0;
  for (int r = 0; r < d.row_count(); ++r) {
    const bool hx = row_has_all(d, r, rule.antecedent);
    const bool hy = row_has(d, r, u, rule.consequent);
    x += hx;
    y += hy;
    xy += hx && hy;
    not_x += !hx;
    not_x_y += !hx && hy;
  }
  const double n = d.row_count();
  ScanStats s{static_cast<double>(xy) / n, std::nullopt, std::nullopt, std::nullopt};
  if (x > 0) s.confidence = static_cast<double>(xy) / static_cast<double>(x);
  if (x > 0 && not_x > 0) {
    const double a = static_cast<double>(xy) / static_cast<double>(x);
    const double b = static_cast<double>(not_x_y) / static_cast<double>(not_x);
    if (std::max(a, b) > 0) s.zhang = (a - b) / std::max(a, b);
  }
  if (x > 0 && y > 0) {
    const double sxy = static_cast<double>(xy) / n;
    s.interestingness = (sxy / (static_cast<double>(x) / n)) * (sxy / (static_cast<double>(y) / n)) * (1.0 - sxy);
  }
  return s;
}

inline double scan_coverage(const Dataset& d, const std::vector<Rule>& rules) {
  long covered = 0;
  for (int r = 0; r < d.row_count(); ++r)
    if (std::any_of(rules.begin(), rules.end(), [&](const Rule& rule) { return row_has_all(d, r, rule.antecedent); }))
      ++covered;
  return static_cast<double>(covered) / d.row_count();
}

// ---- dataset generators ----

/// Table from explicit string rows with header names.
inline Dataset table(std::vector<std::string> columns, std::vector<std::vector<std::string>> rows) {
  return Dataset::from_table(TextTable{std::move(columns), std::move(rows)});
}

/// The six-row toy table used throughout the tests.
inline Dataset t1() {
  return table({"A", "B", "C"}, {{"a1", "b1", "c1"},
                                 {"a1", "b1", "c1"},
                                 {"a1", "b2", "c1"},
                                 {"a2", "b2", "c2"},
                                 {"a2", "b2", "c2"},
                                 {"a2", "b1", "c2"}});
}

struct RandomSpec {
  int max_rows = 500;
  int max_features = 6;
  int max_cardinality = 4;
  int min_features = 2;
};

/// Random categorical data with a latent driver so that strong rules exist. Some
/// categories may be declared but never observed.
inline Dataset random_dataset(std::uint64_t seed, const RandomSpec& spec = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int k = uniform(spec.min_features, spec.max_features);
  const int n = uniform(std::min(20, spec.max_rows), spec.max_rows);
  std::vector<FeatureDef> defs;
  for (int f = 0; f < k; ++f) {
    FeatureDef def{"f" + std::to_string(f), {}};
    const int c = uniform(1, spec.max_cardinality);
    for (int j = 0; j < c; ++j) def.categories.push_back("v" + std::to_string(j));
    defs.push_back(std::move(def));
  }
  std::vector<double> noise(static_cast<std::size_t>(k));
  for (auto& v : noise) v = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  CodeMatrix codes(n, k);
  for (int r = 0; r < n; ++r) {
    const int latent = uniform(0, 3);
    for (int f = 0; f < k; ++f) {
      const int c = static_cast<int>(defs[static_cast<std::size_t>(f)].categories.size());
      const bool noisy = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < noise[static_cast<std::size_t>(f)];
      codes(r, f) = noisy ? uniform(0, c - 1) : (latent + f) % c;
    }
  }
  return Dataset(ItemUniverse(std::move(defs)), std::move(codes));
}

/// 200 rows whose class is a fixed function of (B, C); A and D are noise.
inline Dataset class_function_dataset(int rows = 200) {
  static const char* kLabel[3][2] = {{"pos", "neg"}, {"neg", "pos"}, {"pos", "pos"}};
  std::vector<std::vector<std::string>> table_rows;
  for (int i = 0; i < rows; ++i) {
    const int b = i % 3;
    const int c = (i / 3) % 2;
    table_rows.push_back({"a" + std::to_string((i / 6) % 4), "b" + std::to_string(b), "c" + std::to_string(c),
                          "d" + std::to_string(i % 5), kLabel[b][c]});
  }
  return table({"A", "B", "C", "D", "Class"}, std::move(table_rows));
}

inline double pick_threshold(std::mt19937_64& rng) {
  static constexpr double kGrid[] = {0.0, 0.1, 0.25, 0.3, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  return kGrid[std::uniform_int_distribution<std::size_t>(0, std::size(kGrid) - 1)(rng)];
}

}  // namespace arl::testing
