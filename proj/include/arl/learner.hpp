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

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/model.hpp"
#include "arl/probe.hpp"
#include "arl/rules.hpp"

namespace arl {

/// All feature subsets of size 1..a, by size then lexicographically.
/// Throws ConfigError unless 1 <= a <= k.
std::vector<FeatureSet> enumerate_antecedent_feature_sets(int k, int a);

/// Sum over i = 1..a of C(k, i).
std::int64_t feature_set_count(int k, int a);

/// Minimum of `row` over the marked items; an undefined (NaN) entry scores 0.
double antecedent_score(const Eigen::Ref<const Eigen::RowVectorXd>& row, std::span<const ItemId> marked);

/// Which feature blocks are predicted for a probe batch.
enum class TargetScope {
  kAllFeatures,     // rule extraction: every feature
  kMarkedFeatures,  // frequent itemsets: only the features of S
};

struct ProbeBatch {
  ProbeMatrix probes;
  PredictionMatrix predictions;
};

/// Prediction matrices for every antecedent feature set, computed once and reusable
/// under any threshold setting.
struct ProbeRun {
  std::vector<ProbeBatch> batches;
  RunCounters counters;
  std::string backend;
  std::string dataset_digest;
  std::string fit_strategy;
};

struct ExtractionOptions {
  int workers = 1;
};

/// Fits each target feature's context once and predicts the stacked probes of all
/// feature sets in one call per feature. Parallel over features when the backend
/// allows it; output does not depend on the worker count.
ProbeRun probe_model(const Dataset& dataset, ModelBackend& backend, int max_antecedents, TargetScope scope,
                     const ExtractionOptions& options = {});

/// Applies antecedent validation (tau_a) and consequent extraction (tau_c) to a
/// finished probe run.
RuleSet rules_from_predictions(const ProbeRun& run, const ItemUniverse& universe, const Thresholds& thresholds);

/// Single-target extraction: probe_model over all features, then thresholding.
RuleSet extract_rules_single_target(const Dataset& dataset, ModelBackend& backend, const Thresholds& thresholds,
                                    const ExtractionOptions& options = {});

/// Model that reconstructs the full m-wide item vector from a probe in one pass.
class ReconstructionModel {
 public:
  virtual ~ReconstructionModel() = default;
  virtual std::string name() const = 0;
  virtual Eigen::RowVectorXd reconstruct(const Eigen::Ref<const Eigen::RowVectorXd>& probe) const = 0;
};

/// Per-feature empirical conditionals stitched into one reconstruction: the block of
/// feature f is P(f | hard evidence of the probe outside f).
class StitchedEmpiricalModel final : public ReconstructionModel {
 public:
  explicit StitchedEmpiricalModel(const Dataset& dataset, double alpha = 0.0);

  std::string name() const override;
  Eigen::RowVectorXd reconstruct(const Eigen::Ref<const Eigen::RowVectorXd>& probe) const override;

 private:
  ItemUniverse universe_;
  std::vector<TidSet> item_rows_;
  std::size_t rows_;
  double alpha_;
};

/// Multi-target extraction over the given antecedent feature sets.
RuleSet extract_rules_multi_target(const ReconstructionModel& model, const ItemUniverse& universe,
                                   const std::vector<FeatureSet>& antecedent_sets, const Thresholds& thresholds);

/// Accepts every S-instantiation whose marked predictions are all defined and >= tau_s.
std::vector<FrequentItemset> itemsets_from_predictions(const ProbeRun& run, const ItemUniverse& universe,
                                                       double tau_s);

std::vector<FrequentItemset> extract_frequent_itemsets(const Dataset& dataset, ModelBackend& backend,
                                                       int max_size, double tau_s,
                                                       const ExtractionOptions& options = {},
                                                       RunCounters* counters = nullptr);

}  // namespace arl
