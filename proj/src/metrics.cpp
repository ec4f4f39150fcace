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

#include "arl/metrics.hpp"

#include <algorithm>

#include "arl/error.hpp"

namespace arl {

RuleEvaluator::RuleEvaluator(const Dataset& dataset)
    : item_rows_(dataset.item_tidsets()), rows_(static_cast<std::size_t>(dataset.row_count())) {}

TidSet RuleEvaluator::rows_with(std::span<const ItemId> items) const {
  TidSet mask(rows_, true);
  for (ItemId item : items) {
    if (item < 0 || static_cast<std::size_t>(item) >= item_rows_.size()) throw DataError("item outside the universe");
    mask &= item_rows_[static_cast<std::size_t>(item)];
  }
  return mask;
}

namespace {

std::vector<ItemId> all_items(const Rule& rule) {
  std::vector<ItemId> items = rule.antecedent;
  items.push_back(rule.consequent);
  return items;
}

}  // namespace

double RuleEvaluator::support(const Rule& rule) const {
  if (rows_ == 0) return 0.0;
  return static_cast<double>(rows_with(all_items(rule)).count()) / static_cast<double>(rows_);
}

std::optional<double> RuleEvaluator::confidence(const Rule& rule) const {
  const TidSet x = rows_with(rule.antecedent);
  const auto x_count = x.count();
  if (x_count == 0) return std::nullopt;
  const auto xy_count = x.intersect_count(rows_with({&rule.consequent, 1}));
  return static_cast<double>(xy_count) / static_cast<double>(x_count);
}

std::optional<double> RuleEvaluator::zhang(const Rule& rule) const {
  const TidSet x = rows_with(rule.antecedent);
  const TidSet not_x = x.complement();
  const TidSet y = rows_with({&rule.consequent, 1});
  const auto x_count = x.count();
  const auto not_x_count = not_x.count();
  if (x_count == 0 || not_x_count == 0) return std::nullopt;
  const double with = static_cast<double>(x.intersect_count(y)) / static_cast<double>(x_count);
  const double without = static_cast<double>(not_x.intersect_count(y)) / static_cast<double>(not_x_count);
  const double scale = std::max(with, without);
  if (scale == 0.0) return std::nullopt;
  return (with - without) / scale;
}

std::optional<double> RuleEvaluator::interestingness(const Rule& rule) const {
  if (rows_ == 0) return std::nullopt;
  const TidSet x = rows_with(rule.antecedent);
  const TidSet y = rows_with({&rule.consequent, 1});
  const auto x_count = x.count();
  const auto y_count = y.count();
  if (x_count == 0 || y_count == 0) return std::nullopt;
  const auto xy_count = x.intersect_count(y);
  const double n = static_cast<double>(rows_);
  const double sup_xy = static_cast<double>(xy_count) / n;
  const double sup_x = static_cast<double>(x_count) / n;
  const double sup_y = static_cast<double>(y_count) / n;
  return (sup_xy / sup_x) * (sup_xy / sup_y) * (1.0 - sup_xy);
}

RuleStats RuleEvaluator::stats(const Rule& rule) const {
  return RuleStats{support(rule), confidence(rule), zhang(rule), interestingness(rule)};
}

double RuleEvaluator::coverage(std::span<const Rule> rules) const {
  if (rows_ == 0) return 0.0;
  TidSet covered(rows_);
  for (const auto& rule : rules) covered |= rows_with(rule.antecedent);
  return static_cast<double>(covered.count()) / static_cast<double>(rows_);
}

double support(const Rule& rule, const Dataset& dataset) { return RuleEvaluator(dataset).support(rule); }
std::optional<double> confidence(const Rule& rule, const Dataset& dataset) {
  return RuleEvaluator(dataset).confidence(rule);
}
double coverage(std::span<const Rule> rules, const Dataset& dataset) { return RuleEvaluator(dataset).coverage(rules); }
std::optional<double> zhang(const Rule& rule, const Dataset& dataset) { return RuleEvaluator(dataset).zhang(rule); }
std::optional<double> interestingness(const Rule& rule, const Dataset& dataset) {
  return RuleEvaluator(dataset).interestingness(rule);
}

namespace {

void accumulate(MetricMean& mean, double& sum, std::optional<double> value) {
  if (value) {
    ++mean.defined;
    sum += *value;
  } else {
    ++mean.undefined;
  }
}

void finish(MetricMean& mean, double sum) {
  if (mean.defined > 0) mean.mean = sum / static_cast<double>(mean.defined);
}

}  // namespace

RuleSetSummary summarize(std::span<const Rule> rules, const Dataset& dataset) {
  const RuleEvaluator evaluator(dataset);
  RuleSetSummary out;
  out.rule_count = rules.size();
  double sums[4] = {0, 0, 0, 0};
  for (const auto& rule : rules) {
    out.per_rule.push_back(evaluator.stats(rule));
    const auto& s = out.per_rule.back();
    accumulate(out.support, sums[0], s.support);
    accumulate(out.confidence, sums[1], s.confidence);
    accumulate(out.zhang, sums[2], s.zhang);
    accumulate(out.interestingness, sums[3], s.interestingness);
  }
  finish(out.support, sums[0]);
  finish(out.confidence, sums[1]);
  finish(out.zhang, sums[2]);
  finish(out.interestingness, sums[3]);
  out.coverage = evaluator.coverage(rules);
  return out;
}

}  // namespace arl
