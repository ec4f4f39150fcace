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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/model.hpp"

namespace arl {

/// Item/category pairs observed to hold: (feature, category).
struct EvidenceItem {
  FeatureId feature;
  int category;
};
using Evidence = std::vector<EvidenceItem>;

/// (count(evidence ∪ {target}) + alpha) / (count(evidence) + alpha * c), with c the
/// cardinality of the target's feature. Returns nullopt when alpha == 0 and the
/// evidence never occurs. Throws ConfigError if the evidence touches the target's
/// feature or holds two items of one feature.
std::optional<double> empirical_conditional(const Dataset& dataset, ItemId target,
                                            const Evidence& evidence, double alpha = 0.0);

/// Frequency-table backend: P(class | hard evidence) from context counts, with
/// optional additive smoothing. Fractional probe entries are ignored.
class EmpiricalBackend final : public ModelBackend {
 public:
  explicit EmpiricalBackend(double alpha = 0.0);

  std::string name() const override;
  double alpha() const { return alpha_; }
  bool parallel_safe() const override { return true; }

  std::unique_ptr<FittedModel> fit_context(const Dataset& context,
                                           const std::vector<std::string>& labels) override;

 private:
  double alpha_;
};

}  // namespace arl
