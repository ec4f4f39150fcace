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

#include "arl/universe.hpp"

#include <algorithm>
#include <unordered_set>

#include "arl/error.hpp"

namespace arl {

std::optional<int> FeatureDef::category_index(std::string_view value) const {
  auto it = std::find(categories.begin(), categories.end(), value);
  if (it == categories.end()) return std::nullopt;
  return static_cast<int>(it - categories.begin());
}

ItemUniverse::ItemUniverse(std::vector<FeatureDef> features) : features_(std::move(features)) {
  std::unordered_set<std::string> names;
  for (std::size_t f = 0; f < features_.size(); ++f) {
    const auto& def = features_[f];
    if (!names.insert(def.name).second) throw DataError("duplicate feature name '" + def.name + "'");
    if (def.categories.empty()) throw DataError("feature '" + def.name + "' has no categories");
    std::unordered_set<std::string> seen;
    for (const auto& c : def.categories)
      if (!seen.insert(c).second)
        throw DataError("feature '" + def.name + "' repeats category '" + c + "'");
    offsets_.push_back(item_count_);
    item_count_ += def.cardinality();
    item_feature_.insert(item_feature_.end(), def.categories.size(), static_cast<FeatureId>(f));
  }
}

std::optional<FeatureId> ItemUniverse::find_feature(std::string_view name) const {
  for (std::size_t f = 0; f < features_.size(); ++f)
    if (features_[f].name == name) return static_cast<FeatureId>(f);
  return std::nullopt;
}

FeatureId ItemUniverse::require_feature(std::string_view name) const {
  if (auto f = find_feature(name)) return *f;
  throw ConfigError("unknown feature '" + std::string(name) + "'");
}

std::optional<ItemId> ItemUniverse::find_item(std::string_view feature, std::string_view value) const {
  auto f = find_feature(feature);
  if (!f) return std::nullopt;
  auto c = features_[static_cast<std::size_t>(*f)].category_index(value);
  if (!c) return std::nullopt;
  return item(*f, *c);
}

std::string ItemUniverse::item_label(ItemId item) const {
  const auto& def = feature(feature_of(item));
  return def.name + "=" + def.categories[static_cast<std::size_t>(category_of(item))];
}

ItemUniverse ItemUniverse::without(FeatureId f) const {
  if (f < 0 || f >= feature_count()) throw ConfigError("feature index out of range");
  auto rest = features_;
  rest.erase(rest.begin() + f);
  return ItemUniverse(std::move(rest));
}

bool ItemUniverse::operator==(const ItemUniverse& other) const {
  if (features_.size() != other.features_.size()) return false;
  for (std::size_t f = 0; f < features_.size(); ++f)
    if (features_[f].name != other.features_[f].name ||
        features_[f].categories != other.features_[f].categories)
      return false;
  return true;
}

}  // namespace arl
