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

#include <string>
#include <vector>

#include <json.hpp>

#include "arl/classifier.hpp"
#include "arl/dataset.hpp"
#include "arl/metrics.hpp"
#include "arl/rules.hpp"

namespace arl {

/// {features:[{name,categories}], n, m}
nlohmann::json dataset_summary(const Dataset& dataset);

/// {meta:{...}, rules:[{antecedent:[{feature,value}], consequent:{feature,value},
///  validity, support, confidence, zhang, interestingness}]}; metrics are computed on
/// `dataset`, undefined ones are null.
nlohmann::json ruleset_to_json(const RuleSet& ruleset, const Dataset& dataset);

/// Reads the rules array (and meta when present) against a universe. Throws
/// DataError for unknown features/values or structurally invalid rules.
RuleSet ruleset_from_json(const nlohmann::json& document, const ItemUniverse& universe);

/// {itemsets:[{items:[{feature,value}], score}]}
nlohmann::json itemsets_to_json(const std::vector<FrequentItemset>& itemsets, const ItemUniverse& universe);

/// One itemset per line: "{f=v,g=w}" followed by one 0/1 token per row of `dataset`.
std::string itemsets_to_corels(const std::vector<FrequentItemset>& itemsets, const Dataset& dataset);
/// One line per class category, in the same token format.
std::string labels_to_corels(const Dataset& dataset, FeatureId class_feature);

nlohmann::json summary_to_json(const RuleSetSummary& summary);
/// Aligned columns: label, # rules, support, confidence, zhang, interestingness, coverage.
std::string summary_table(const std::vector<std::pair<std::string, RuleSetSummary>>& rows);

nlohmann::json eval_report_to_json(const EvalReport& report);
std::string eval_table(const EvalReport& report);

}  // namespace arl
