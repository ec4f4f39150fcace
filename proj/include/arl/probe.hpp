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
#include <vector>

#include "arl/universe.hpp"

namespace arl {

/// Ordered list of distinct feature indices (ascending).
using FeatureSet = std::vector<FeatureId>;

/// Probe vectors for one marked feature set S. Row r marks, for every feature of S,
/// the category `marked(r, s)`; all other features carry the uniform prior 1/c_f.
struct ProbeMatrix {
  FeatureSet marked_features;
  Eigen::MatrixXd values;                                                   // rows x m
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> marked;  // rows x |S|

  Eigen::Index rows() const { return values.rows(); }
  /// Item ids of the antecedent encoded by row r.
  std::vector<ItemId> marked_items(const ItemUniverse& universe, Eigen::Index r) const;
};

/// One row per element of the Cartesian product of S's categories, in lexicographic
/// order of category indices (last feature varies fastest).
/// Throws ConfigError when S is empty, unsorted, or references unknown features.
ProbeMatrix generate_probe_vectors(const FeatureSet& S, const ItemUniverse& universe);

/// Number of probe rows for S: product of the cardinalities.
std::int64_t probe_count(const FeatureSet& S, const ItemUniverse& universe);

/// Copy of `values` with the column block of feature f deleted.
Eigen::MatrixXd remove_feature(const Eigen::Ref<const Eigen::MatrixXd>& values,
                               const ItemUniverse& universe, FeatureId f);

/// Hard evidence carried by a probe row: per feature, the category whose entry is
/// exactly 1 with all siblings exactly 0, or -1 when the feature is not observed.
std::vector<int> hard_evidence(const Eigen::Ref<const Eigen::RowVectorXd>& row,
                               const ItemUniverse& universe);

}  // namespace arl
