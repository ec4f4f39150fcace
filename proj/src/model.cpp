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

#include "arl/model.hpp"

#include <limits>

#include "arl/error.hpp"

namespace arl {

namespace {

template <typename Fn>
auto annotate(const ItemUniverse& universe, FeatureId f, Fn&& fn) {
  const std::string where = "feature '" + universe.feature(f).name + "': ";
  try {
    return fn();
  } catch (const TransportError& e) {
    throw TransportError(where + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  } catch (const DataError& e) {
    throw DataError(where + e.what());
  }
}

}  // namespace

void scatter_distribution(const Eigen::Ref<const Eigen::MatrixXd>& probs, const std::vector<std::string>& classes,
                          const ItemUniverse& universe, FeatureId f, Eigen::Ref<Eigen::MatrixXd> out) {
  if (probs.cols() != static_cast<Eigen::Index>(classes.size()))
    throw TransportError("expected " + std::to_string(classes.size()) + " class probabilities, got " +
                         std::to_string(probs.cols()));
  if (probs.rows() != out.rows())
    throw TransportError("expected " + std::to_string(out.rows()) + " prediction rows, got " +
                         std::to_string(probs.rows()));
  const auto& def = universe.feature(f);
  auto block = out.middleCols(universe.offset(f), def.cardinality());
  block.setZero();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto category = def.category_index(classes[c]);
    if (!category) throw DataError("model returned unknown class '" + classes[c] + "'");
    block.col(*category) = probs.col(static_cast<Eigen::Index>(c));
  }
  // An undefined row stays undefined across the whole block.
  for (Eigen::Index r = 0; r < block.rows(); ++r)
    if (block.row(r).hasNaN()) block.row(r).setConstant(std::numeric_limits<double>::quiet_NaN());
}

PredictionMatrix assemble_prediction_matrix(const Dataset& dataset, ModelBackend& backend, const ProbeMatrix& probes,
                                            const FeatureSet& targets) {
  const auto& universe = dataset.universe();
  if (probes.values.cols() != universe.item_count())
    throw ConfigError("probe width does not match the dataset universe");

  FeatureSet features = targets;
  if (features.empty())
    for (FeatureId f = 0; f < universe.feature_count(); ++f) features.push_back(f);

  PredictionMatrix out;
  out.values = Eigen::MatrixXd::Zero(probes.rows(), universe.item_count());
  out.populated.assign(static_cast<std::size_t>(universe.feature_count()), false);
  for (FeatureId f : features) {
    annotate(universe, f, [&] {
      auto fitted = backend.fit_context(remove_feature(dataset, f), get_labels(dataset, f));
      const Eigen::MatrixXd probs = fitted->predict_proba(remove_feature(probes.values, universe, f));
      scatter_distribution(probs, fitted->classes(), universe, f, out.values);
      return 0;
    });
    out.populated[static_cast<std::size_t>(f)] = true;
  }
  return out;
}

}  // namespace arl
