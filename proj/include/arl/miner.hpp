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

#include <vector>

#include "arl/dataset.hpp"
#include "arl/rules.hpp"

namespace arl {

struct MinerParams {
  double min_support = 0.1;
  double min_confidence = 0.8;
  int max_antecedents = 2;
  int workers = 1;

  void validate() const;
};

/// Levelwise (apriori) support counting over items with at most one item per
/// feature; support-based pruning uses anti-monotonicity. Itemsets with zero count
/// are kept when min_support is 0 so that every rule with a nonzero antecedent count
/// is reachable.
RuleSet mine(const Dataset& dataset, const MinerParams& params);

/// Itemsets of size <= max_size present in at least one row with support >=
/// min_support; score holds the support.
std::vector<FrequentItemset> mine_itemsets(const Dataset& dataset, double min_support, int max_size,
                                           int workers = 1);

}  // namespace arl
