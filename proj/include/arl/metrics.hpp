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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/rules.hpp"
#include "arl/tidset.hpp"

namespace arl {

/// Quality of one rule on a dataset. Undefined values are nullopt.
struct RuleStats {
  double support = 0.0;
  std::optional<double> confidence;
  std::optional<double> zhang;
  std::optional<double> interestingness;
};

/// Mean over the defined values only.
struct MetricMean {
  std::optional<double> mean;
  std::size_t defined = 0;
  std::size_t undefined = 0;
};

struct RuleSetSummary {
  std::size_t rule_count = 0;
  MetricMean support;
  MetricMean confidence;
  MetricMean zhang;
  MetricMean interestingness;
  double coverage = 0.0;
  std::vector<RuleStats> per_rule;
};

/// Caches item row sets of one dataset; all metrics are exact count ratios.
class RuleEvaluator {
 public:
  explicit RuleEvaluator(const Dataset& dataset);

  /// Rows containing every item.
  TidSet rows_with(std::span<const ItemId> items) const;

  double support(const Rule& rule) const;
  std::optional<double> confidence(const Rule& rule) const;
  std::optional<double> zhang(const Rule& rule) const;
  std::optional<double> interestingness(const Rule& rule) const;
  RuleStats stats(const Rule& rule) const;
  double coverage(std::span<const Rule> rules) const;

 private:
  std::vector<TidSet> item_rows_;
  std::size_t rows_;
};

double support(const Rule& rule, const Dataset& dataset);
/// sup(X ∪ Y) / sup(X); nullopt when X never occurs.
std::optional<double> confidence(const Rule& rule, const Dataset& dataset);
/// Fraction of rows matched by at least one antecedent.
double coverage(std::span<const Rule> rules, const Dataset& dataset);
/// (conf(X→Y) − conf(¬X→Y)) / max of the two, where ¬X is the rows lacking some
/// item of X. nullopt if either side is undefined or both are 0.
std::optional<double> zhang(const Rule& rule, const Dataset& dataset);
/// conf(X→Y) · sup(X∪Y)/sup(Y) · (1 − sup(X∪Y)); nullopt if sup(X) or sup(Y) is 0.
std::optional<double> interestingness(const Rule& rule, const Dataset& dataset);

RuleSetSummary summarize(std::span<const Rule> rules, const Dataset& dataset);

}  // namespace arl
