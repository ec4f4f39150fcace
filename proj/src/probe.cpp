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

#include "arl/probe.hpp"

#include <algorithm>

#include "arl/error.hpp"

namespace arl {

namespace {

void check_feature_set(const FeatureSet& S, const ItemUniverse& universe) {
  if (S.empty()) throw ConfigError("probe feature set is empty");
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] < 0 || S[i] >= universe.feature_count())
      throw ConfigError("probe feature index " + std::to_string(S[i]) + " out of range");
    if (i > 0 && S[i] <= S[i - 1]) throw ConfigError("probe feature set must be strictly ascending");
  }
}

}  // namespace

std::vector<ItemId> ProbeMatrix::marked_items(const ItemUniverse& universe, Eigen::Index r) const {
  std::vector<ItemId> items(marked_features.size());
  for (std::size_t s = 0; s < marked_features.size(); ++s)
    items[s] = universe.item(marked_features[s], marked(r, static_cast<Eigen::Index>(s)));
  return items;
}

std::int64_t probe_count(const FeatureSet& S, const ItemUniverse& universe) {
  std::int64_t total = 1;
  for (FeatureId f : S) total *= universe.cardinality(f);
  return total;
}

ProbeMatrix generate_probe_vectors(const FeatureSet& S, const ItemUniverse& universe) {
  check_feature_set(S, universe);
  const auto rows = static_cast<Eigen::Index>(probe_count(S, universe));
  const auto width = static_cast<Eigen::Index>(S.size());

  ProbeMatrix out;
  out.marked_features = S;
  out.values.resize(rows, universe.item_count());
  out.marked.resize(rows, width);

  // Template row: uniform priors everywhere, marked blocks zeroed.
  Eigen::RowVectorXd prior(universe.item_count());
  for (FeatureId f = 0; f < universe.feature_count(); ++f)
    prior.segment(universe.offset(f), universe.cardinality(f)).setConstant(1.0 / universe.cardinality(f));
  for (FeatureId f : S) prior.segment(universe.offset(f), universe.cardinality(f)).setZero();

  std::vector<int> odometer(S.size(), 0);
  for (Eigen::Index r = 0; r < rows; ++r) {
    out.values.row(r) = prior;
    for (std::size_t s = 0; s < S.size(); ++s) {
      out.values(r, universe.item(S[s], odometer[s])) = 1.0;
      out.marked(r, static_cast<Eigen::Index>(s)) = odometer[s];
    }
    for (std::size_t s = S.size(); s-- > 0;) {
      if (++odometer[s] < universe.cardinality(S[s])) break;
      odometer[s] = 0;
    }
  }
  return out;
}

Eigen::MatrixXd remove_feature(const Eigen::Ref<const Eigen::MatrixXd>& values, const ItemUniverse& universe,
                               FeatureId f) {
  if (f < 0 || f >= universe.feature_count()) throw ConfigError("unknown feature index " + std::to_string(f));
  if (values.cols() != universe.item_count())
    throw ConfigError("matrix width " + std::to_string(values.cols()) + " does not match universe width " +
                      std::to_string(universe.item_count()));
  const Eigen::Index begin = universe.offset(f);
  const Eigen::Index width = universe.cardinality(f);
  const Eigen::Index tail = values.cols() - begin - width;
  Eigen::MatrixXd out(values.rows(), values.cols() - width);
  out.leftCols(begin) = values.leftCols(begin);
  out.rightCols(tail) = values.rightCols(tail);
  return out;
}

std::vector<int> hard_evidence(const Eigen::Ref<const Eigen::RowVectorXd>& row, const ItemUniverse& universe) {
  if (row.size() != universe.item_count())
    throw ConfigError("probe width " + std::to_string(row.size()) + " does not match universe width " +
                      std::to_string(universe.item_count()));
  std::vector<int> evidence(static_cast<std::size_t>(universe.feature_count()), -1);
  for (FeatureId f = 0; f < universe.feature_count(); ++f) {
    const auto block = row.segment(universe.offset(f), universe.cardinality(f));
    int hit = -1;
    bool exact = true;
    for (Eigen::Index c = 0; c < block.size(); ++c) {
      if (block[c] == 1.0 && hit < 0)
        hit = static_cast<int>(c);
      else if (block[c] != 0.0)
        exact = false;
    }
    if (hit >= 0 && exact) evidence[static_cast<std::size_t>(f)] = hit;
  }
  return evidence;
}

}  // namespace arl
