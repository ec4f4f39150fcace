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

#include <memory>
#include <string>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/probe.hpp"

namespace arl {

/// A model conditioned on a context table, answering distributions over the
/// held-out feature's classes.
class FittedModel {
 public:
  virtual ~FittedModel() = default;

  /// Classes seen in the context labels; column order of predict_proba.
  virtual const std::vector<std::string>& classes() const = 0;
  /// Number of input columns (items of the context universe).
  virtual Eigen::Index width() const = 0;

  /// One distribution per probe row. A row of NaN marks an undefined conditional
  /// (the evidence never occurs in the context). Throws ConfigError on a width
  /// mismatch and TransportError for remote failures.
  virtual Eigen::MatrixXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& probes) = 0;
};

/// Conditional probabilistic model contract: in-context fit followed by predict_proba.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;

  virtual std::string name() const = 0;

  /// Whether fit_context and the returned handles may be used from several threads.
  virtual bool parallel_safe() const { return false; }

  /// Conditions on (context, labels). Throws DataError on an empty or mismatched
  /// context and TransportError if a remote backend is unavailable.
  virtual std::unique_ptr<FittedModel> fit_context(const Dataset& context,
                                                   const std::vector<std::string>& labels) = 0;
};

/// Per-probe conditional probabilities assembled feature by feature. Unpopulated
/// feature blocks stay zero; undefined conditionals are NaN.
struct PredictionMatrix {
  Eigen::MatrixXd values;        // probes x m
  std::vector<bool> populated;   // per feature
};

/// Fits one context per target feature and predicts its block for every probe.
/// `targets` empty means all features.
PredictionMatrix assemble_prediction_matrix(const Dataset& dataset, ModelBackend& backend,
                                            const ProbeMatrix& probes,
                                            const FeatureSet& targets = {});

/// Writes a fitted model's distribution into the feature block of `out`, mapping
/// classes to categories by name. Categories absent from the context get 0.
void scatter_distribution(const Eigen::Ref<const Eigen::MatrixXd>& probs,
                          const std::vector<std::string>& classes, const ItemUniverse& universe,
                          FeatureId f, Eigen::Ref<Eigen::MatrixXd> out);

}  // namespace arl
