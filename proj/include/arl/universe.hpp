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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arl {

/// Global item index in [0, m).
using ItemId = int;
/// Feature index in [0, k).
using FeatureId = int;

/// Category used for empty cells so that every row keeps one item per feature.
inline constexpr std::string_view kMissingCategory = "__missing__";

struct FeatureDef {
  std::string name;
  std::vector<std::string> categories;

  int cardinality() const { return static_cast<int>(categories.size()); }
  std::optional<int> category_index(std::string_view value) const;
};

/// Ordered features with a gap-free item numbering: the items of feature j occupy
/// the contiguous block [offset(j), offset(j) + cardinality(j)).
class ItemUniverse {
 public:
  ItemUniverse() = default;
  explicit ItemUniverse(std::vector<FeatureDef> features);

  int feature_count() const { return static_cast<int>(features_.size()); }
  int item_count() const { return item_count_; }

  const FeatureDef& feature(FeatureId f) const { return features_.at(static_cast<std::size_t>(f)); }
  const std::vector<FeatureDef>& features() const { return features_; }
  int cardinality(FeatureId f) const { return feature(f).cardinality(); }
  int offset(FeatureId f) const { return offsets_.at(static_cast<std::size_t>(f)); }

  ItemId item(FeatureId f, int category) const { return offset(f) + category; }
  FeatureId feature_of(ItemId item) const { return item_feature_.at(static_cast<std::size_t>(item)); }
  int category_of(ItemId item) const { return item - offset(feature_of(item)); }

  std::optional<FeatureId> find_feature(std::string_view name) const;
  /// Throws ConfigError when the feature is unknown.
  FeatureId require_feature(std::string_view name) const;
  std::optional<ItemId> find_item(std::string_view feature, std::string_view value) const;

  /// "feature=value" rendering used in logs and text tables.
  std::string item_label(ItemId item) const;

  /// Universe with feature f removed; remaining order preserved.
  ItemUniverse without(FeatureId f) const;

  bool operator==(const ItemUniverse& other) const;

 private:
  std::vector<FeatureDef> features_;
  std::vector<int> offsets_;
  std::vector<FeatureId> item_feature_;
  int item_count_ = 0;
};

}  // namespace arl
