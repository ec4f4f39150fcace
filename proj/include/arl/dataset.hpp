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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arl/tidset.hpp"
#include "arl/universe.hpp"

namespace arl {

/// n x k category codes, one row per transaction.
using CodeMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A raw text table before any item universe is built.
struct TextTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Categorical transaction table. Every row holds exactly one category per feature,
/// so its one-hot encoding satisfies the per-feature simplex constraint.
class Dataset {
 public:
  Dataset() = default;
  /// Throws DataError if a code is out of range for its feature.
  Dataset(ItemUniverse universe, CodeMatrix codes);

  /// Builds the universe from observed values in first-occurrence order.
  /// Empty cells map to kMissingCategory.
  static Dataset from_table(const TextTable& table);

  const ItemUniverse& universe() const { return universe_; }
  const CodeMatrix& codes() const { return codes_; }
  int row_count() const { return static_cast<int>(codes_.rows()); }
  int feature_count() const { return universe_.feature_count(); }

  int code(int row, FeatureId f) const { return codes_(row, f); }
  ItemId item_at(int row, FeatureId f) const { return universe_.item(f, codes_(row, f)); }
  const std::string& value(int row, FeatureId f) const {
    return universe_.feature(f).categories[static_cast<std::size_t>(codes_(row, f))];
  }
  std::vector<ItemId> row_items(int row) const;
  bool row_contains(int row, ItemId item) const;

  /// n x m one-hot encoding.
  Eigen::MatrixXd one_hot() const;

  /// Rows containing each item, indexed by ItemId.
  std::vector<TidSet> item_tidsets() const;

  /// Subset of rows over the same universe (item ids stay valid).
  Dataset select_rows(std::span<const int> rows) const;

  /// Back to text, e.g. for serializing a context table.
  TextTable to_table() const;

  /// Stable 64-bit FNV-1a digest of the universe and codes, rendered as hex.
  std::string digest() const;

 private:
  ItemUniverse universe_;
  CodeMatrix codes_;
};

/// Parses comma-separated text. Supports double-quoted cells with "" escapes.
/// Throws DataError on ragged rows ("ragged row N", 1-based file line) or an empty table.
TextTable parse_csv(std::string_view text, bool header);
Dataset ingest_csv(const std::filesystem::path& path, bool header);

/// Replaces each named numeric column with equal-frequency bin labels "[lo,hi]".
/// Equal values always land in the same (lower) bin, so fewer than `bins` bins may
/// result. Columns whose values are already bin labels pass through unchanged.
Dataset discretize_equal_frequency(const Dataset& dataset,
                                   std::span<const std::string> numeric_columns, int bins = 10);

/// Dataset without feature f; the source is left untouched.
Dataset remove_feature(const Dataset& dataset, FeatureId f);
/// Category of feature f per row.
std::vector<std::string> get_labels(const Dataset& dataset, FeatureId f);

}  // namespace arl
