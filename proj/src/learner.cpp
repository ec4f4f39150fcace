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

#include "arl/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "arl/error.hpp"
#include "arl/parallel.hpp"

namespace arl {

std::vector<FeatureSet> enumerate_antecedent_feature_sets(int k, int a) {
  if (a < 1 || a > k)
    throw ConfigError("max antecedents must satisfy 1 <= a <= k (a=" + std::to_string(a) +
                      ", k=" + std::to_string(k) + ")");
  std::vector<FeatureSet> out;
  for (int size = 1; size <= a; ++size) {
    FeatureSet current(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) current[static_cast<std::size_t>(i)] = i;
    for (;;) {
      out.push_back(current);
      int i = size - 1;
      while (i >= 0 && current[static_cast<std::size_t>(i)] == k - size + i) --i;
      if (i < 0) break;
      ++current[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j)
        current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::int64_t feature_set_count(int k, int a) {
  std::int64_t total = 0;
  std::int64_t binom = 1;  // C(k, 0)
  for (int i = 1; i <= a && i <= k; ++i) {
    binom = binom * (k - i + 1) / i;
    total += binom;
  }
  return total;
}

double antecedent_score(const Eigen::Ref<const Eigen::RowVectorXd>& row, std::span<const ItemId> marked) {
  double score = 1.0;
  for (ItemId item : marked) {
    const double v = row[item];
    if (std::isnan(v)) return 0.0;
    score = std::min(score, v);
  }
  return score;
}

namespace {

bool targets(TargetScope scope, const FeatureSet& S, FeatureId f) {
  return scope == TargetScope::kAllFeatures || std::binary_search(S.begin(), S.end(), f);
}

}  // namespace

ProbeRun probe_model(const Dataset& dataset, ModelBackend& backend, int max_antecedents, TargetScope scope,
                     const ExtractionOptions& options) {
  const auto& universe = dataset.universe();
  const int k = universe.feature_count();
  if (dataset.row_count() == 0) throw DataError("dataset is empty");
  if (max_antecedents < 1) throw ConfigError("max antecedents must be >= 1");

  ProbeRun run;
  run.backend = backend.name();
  run.dataset_digest = dataset.digest();
  run.fit_strategy = "fit-once-per-feature";

  const auto sets = enumerate_antecedent_feature_sets(k, std::min(max_antecedents, k));
  run.batches.resize(sets.size());
  for (std::size_t b = 0; b < sets.size(); ++b) {
    auto& batch = run.batches[b];
    batch.probes = generate_probe_vectors(sets[b], universe);
    batch.predictions.values = Eigen::MatrixXd::Zero(batch.probes.rows(), universe.item_count());
    batch.predictions.populated.assign(static_cast<std::size_t>(k), false);
    run.counters.probes += batch.probes.rows();
  }
  run.counters.feature_sets = static_cast<std::int64_t>(sets.size());

  std::vector<FeatureId> target_features;
  for (FeatureId f = 0; f < k; ++f)
    if (std::any_of(sets.begin(), sets.end(), [&](const FeatureSet& S) { return targets(scope, S, f); }))
      target_features.push_back(f);

  const int workers = backend.parallel_safe() ? options.workers : 1;
  parallel_for(target_features.size(), workers, [&](std::size_t t) {
    const FeatureId f = target_features[t];
    const std::string where = "feature '" + universe.feature(f).name + "': ";
    std::vector<std::size_t> members;
    Eigen::Index stacked_rows = 0;
    for (std::size_t b = 0; b < sets.size(); ++b)
      if (targets(scope, sets[b], f)) {
        members.push_back(b);
        stacked_rows += run.batches[b].probes.rows();
      }
    const Eigen::Index width = universe.item_count() - universe.cardinality(f);
    Eigen::MatrixXd stacked(stacked_rows, width);
    Eigen::Index at = 0;
    for (std::size_t b : members) {
      const auto& q = run.batches[b].probes.values;
      stacked.middleRows(at, q.rows()) = remove_feature(q, universe, f);
      at += q.rows();
    }
    try {
      auto fitted = backend.fit_context(remove_feature(dataset, f), get_labels(dataset, f));
      const Eigen::MatrixXd probs = fitted->predict_proba(stacked);
      if (probs.rows() != stacked_rows) throw TransportError("prediction row count mismatch");
      at = 0;
      for (std::size_t b : members) {
        auto& batch = run.batches[b];
        scatter_distribution(probs.middleRows(at, batch.probes.rows()), fitted->classes(), universe, f,
                             batch.predictions.values);
        batch.predictions.populated[static_cast<std::size_t>(f)] = true;
        at += batch.probes.rows();
      }
    } catch (const TransportError& e) {
      throw TransportError(where + e.what());
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  });
  run.counters.fits = static_cast<std::int64_t>(target_features.size());
  run.counters.predict_calls = static_cast<std::int64_t>(target_features.size());
  return run;
}

namespace {

void emit_rules(const Eigen::Ref<const Eigen::RowVectorXd>& row, const std::vector<ItemId>& marked,
                const FeatureSet& S, const ItemUniverse& universe, const Thresholds& thresholds,
                std::vector<Rule>& out) {
  if (antecedent_score(row, marked) < thresholds.tau_a) return;
  for (FeatureId f = 0; f < universe.feature_count(); ++f) {
    if (std::binary_search(S.begin(), S.end(), f)) continue;
    for (int c = 0; c < universe.cardinality(f); ++c) {
      const ItemId item = universe.item(f, c);
      const double p = row[item];
      if (p >= thresholds.tau_c) out.push_back(Rule{marked, item, p});
    }
  }
}

}  // namespace

RuleSet rules_from_predictions(const ProbeRun& run, const ItemUniverse& universe, const Thresholds& thresholds) {
  thresholds.validate();
  RuleSet out;
  out.meta.backend = run.backend;
  out.meta.dataset_digest = run.dataset_digest;
  out.meta.fit_strategy = run.fit_strategy;
  out.meta.thresholds = thresholds;
  out.meta.counters = run.counters;
  out.meta.counters.undefined_antecedents = 0;
  for (const auto& batch : run.batches) {
    const auto& S = batch.probes.marked_features;
    for (Eigen::Index r = 0; r < batch.probes.rows(); ++r) {
      const auto row = batch.predictions.values.row(r);
      if (row.hasNaN()) ++out.meta.counters.undefined_antecedents;
      emit_rules(row, batch.probes.marked_items(universe, r), S, universe, thresholds, out.rules);
    }
  }
  canonicalize(out.rules, universe);
  for (const auto& rule : out.rules) check_rule(rule, universe);
  return out;
}

RuleSet extract_rules_single_target(const Dataset& dataset, ModelBackend& backend, const Thresholds& thresholds,
                                    const ExtractionOptions& options) {
  thresholds.validate();
  const ProbeRun run =
      probe_model(dataset, backend, thresholds.max_antecedents, TargetScope::kAllFeatures, options);
  return rules_from_predictions(run, dataset.universe(), thresholds);
}

StitchedEmpiricalModel::StitchedEmpiricalModel(const Dataset& dataset, double alpha)
    : universe_(dataset.universe()),
      item_rows_(dataset.item_tidsets()),
      rows_(static_cast<std::size_t>(dataset.row_count())),
      alpha_(alpha) {
  if (!(alpha >= 0.0)) throw ConfigError("smoothing alpha must be >= 0");
}

std::string StitchedEmpiricalModel::name() const {
  std::ostringstream os;
  os << "stitched-empirical";
  if (alpha_ != 0.0) os << "(alpha=" << alpha_ << ")";
  return os.str();
}

Eigen::RowVectorXd StitchedEmpiricalModel::reconstruct(const Eigen::Ref<const Eigen::RowVectorXd>& probe) const {
  const auto evidence = hard_evidence(probe, universe_);
  Eigen::RowVectorXd out(universe_.item_count());
  for (FeatureId f = 0; f < universe_.feature_count(); ++f) {
    TidSet mask(rows_, true);
    for (FeatureId g = 0; g < universe_.feature_count(); ++g)
      if (const int c = evidence[static_cast<std::size_t>(g)]; g != f && c >= 0)
        mask &= item_rows_[static_cast<std::size_t>(universe_.item(g, c))];
    const auto matched = static_cast<double>(mask.count());
    const int cardinality = universe_.cardinality(f);
    auto block = out.segment(universe_.offset(f), cardinality);
    if (alpha_ == 0.0 && matched == 0.0) {
      block.setConstant(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    for (int c = 0; c < cardinality; ++c) {
      const auto joint =
          static_cast<double>(mask.intersect_count(item_rows_[static_cast<std::size_t>(universe_.item(f, c))]));
      block[c] = (joint + alpha_) / (matched + alpha_ * static_cast<double>(cardinality));
    }
  }
  return out;
}

RuleSet extract_rules_multi_target(const ReconstructionModel& model, const ItemUniverse& universe,
                                   const std::vector<FeatureSet>& antecedent_sets, const Thresholds& thresholds) {
  thresholds.validate();
  RuleSet out;
  out.meta.backend = model.name();
  out.meta.fit_strategy = "single-pass-reconstruction";
  out.meta.thresholds = thresholds;
  out.meta.counters.feature_sets = static_cast<std::int64_t>(antecedent_sets.size());
  for (const auto& S : antecedent_sets) {
    const ProbeMatrix probes = generate_probe_vectors(S, universe);
    out.meta.counters.probes += probes.rows();
    for (Eigen::Index r = 0; r < probes.rows(); ++r) {
      const Eigen::RowVectorXd reconstruction = model.reconstruct(probes.values.row(r));
      ++out.meta.counters.predict_calls;
      if (reconstruction.size() != universe.item_count())
        throw TransportError("reconstruction width does not match the universe");
      if (reconstruction.hasNaN()) ++out.meta.counters.undefined_antecedents;
      emit_rules(reconstruction, probes.marked_items(universe, r), S, universe, thresholds, out.rules);
    }
  }
  canonicalize(out.rules, universe);
  for (const auto& rule : out.rules) check_rule(rule, universe);
  return out;
}

std::vector<FrequentItemset> itemsets_from_predictions(const ProbeRun& run, const ItemUniverse& universe,
                                                       double tau_s) {
  if (!(tau_s >= 0.0 && tau_s <= 1.0)) throw ConfigError("tau_s must lie in [0,1]");
  std::vector<FrequentItemset> out;
  for (const auto& batch : run.batches) {
    for (Eigen::Index r = 0; r < batch.probes.rows(); ++r) {
      const auto items = batch.probes.marked_items(universe, r);
      const auto row = batch.predictions.values.row(r);
      double score = 1.0;
      bool defined = true;
      for (ItemId item : items) {
        if (std::isnan(row[item])) {
          defined = false;
          break;
        }
        score = std::min(score, row[item]);
      }
      if (defined && score >= tau_s) out.push_back(FrequentItemset{items, score});
    }
  }
  canonicalize(out, universe);
  return out;
}

std::vector<FrequentItemset> extract_frequent_itemsets(const Dataset& dataset, ModelBackend& backend, int max_size,
                                                       double tau_s, const ExtractionOptions& options,
                                                       RunCounters* counters) {
  if (!(tau_s >= 0.0 && tau_s <= 1.0)) throw ConfigError("tau_s must lie in [0,1]");
  const ProbeRun run = probe_model(dataset, backend, max_size, TargetScope::kMarkedFeatures, options);
  if (counters) *counters = run.counters;
  return itemsets_from_predictions(run, dataset.universe(), tau_s);
}

}  // namespace arl
