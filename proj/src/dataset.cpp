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

#include "arl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "arl/error.hpp"

namespace arl {

Dataset::Dataset(ItemUniverse universe, CodeMatrix codes)
    : universe_(std::move(universe)), codes_(std::move(codes)) {
  if (codes_.cols() != universe_.feature_count())
    throw DataError("code matrix has " + std::to_string(codes_.cols()) + " columns, universe has " +
                    std::to_string(universe_.feature_count()) + " features");
  for (Eigen::Index r = 0; r < codes_.rows(); ++r)
    for (Eigen::Index f = 0; f < codes_.cols(); ++f) {
      const int c = codes_(r, f);
      if (c < 0 || c >= universe_.cardinality(static_cast<FeatureId>(f)))
        throw DataError("row " + std::to_string(r) + ": category code " + std::to_string(c) +
                        " out of range for feature '" +
                        universe_.feature(static_cast<FeatureId>(f)).name + "'");
    }
}

Dataset Dataset::from_table(const TextTable& table) {
  if (table.columns.empty()) throw DataError("empty table: no columns");
  if (table.rows.empty()) throw DataError("empty table: no rows");
  const std::size_t k = table.columns.size();
  std::vector<FeatureDef> defs(k);
  std::vector<std::unordered_map<std::string, int>> lookup(k);
  CodeMatrix codes(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(k));
  for (std::size_t f = 0; f < k; ++f) defs[f].name = table.columns[f];
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != k)
      throw DataError("ragged row " + std::to_string(r + 1) + ": expected " + std::to_string(k) +
                      " cells, got " + std::to_string(row.size()));
    for (std::size_t f = 0; f < k; ++f) {
      std::string value = row[f].empty() ? std::string(kMissingCategory) : row[f];
      auto [it, inserted] = lookup[f].try_emplace(value, static_cast<int>(defs[f].categories.size()));
      if (inserted) defs[f].categories.push_back(value);
      codes(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = it->second;
    }
  }
  return Dataset(ItemUniverse(std::move(defs)), std::move(codes));
}

std::vector<ItemId> Dataset::row_items(int row) const {
  std::vector<ItemId> items(static_cast<std::size_t>(feature_count()));
  for (FeatureId f = 0; f < feature_count(); ++f) items[static_cast<std::size_t>(f)] = item_at(row, f);
  return items;
}

bool Dataset::row_contains(int row, ItemId item) const {
  const FeatureId f = universe_.feature_of(item);
  return codes_(row, f) == universe_.category_of(item);
}

Eigen::MatrixXd Dataset::one_hot() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(codes_.rows(), universe_.item_count());
  for (Eigen::Index r = 0; r < codes_.rows(); ++r)
    for (FeatureId f = 0; f < feature_count(); ++f) out(r, item_at(static_cast<int>(r), f)) = 1.0;
  return out;
}

std::vector<TidSet> Dataset::item_tidsets() const {
  std::vector<TidSet> sets(static_cast<std::size_t>(universe_.item_count()),
                           TidSet(static_cast<std::size_t>(row_count())));
  for (int r = 0; r < row_count(); ++r)
    for (FeatureId f = 0; f < feature_count(); ++f)
      sets[static_cast<std::size_t>(item_at(r, f))].set(static_cast<std::size_t>(r));
  return sets;
}

Dataset Dataset::select_rows(std::span<const int> rows) const {
  CodeMatrix sub(static_cast<Eigen::Index>(rows.size()), codes_.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= row_count()) throw DataError("row index out of range");
    sub.row(static_cast<Eigen::Index>(i)) = codes_.row(rows[i]);
  }
  return Dataset(universe_, std::move(sub));
}

TextTable Dataset::to_table() const {
  TextTable table;
  for (const auto& def : universe_.features()) table.columns.push_back(def.name);
  table.rows.reserve(static_cast<std::size_t>(row_count()));
  for (int r = 0; r < row_count(); ++r) {
    std::vector<std::string> cells;
    cells.reserve(static_cast<std::size_t>(feature_count()));
    for (FeatureId f = 0; f < feature_count(); ++f) cells.push_back(value(r, f));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

namespace {

struct Fnv1a {
  std::uint64_t state = 14695981039346656037ULL;
  void bytes(std::string_view s) {
    for (unsigned char ch : s) {
      state ^= ch;
      state *= 1099511628211ULL;
    }
  }
  void separator() { bytes(std::string_view("\x1f", 1)); }
  void integer(std::int64_t v) { bytes(std::to_string(v)); separator(); }
};

}  // namespace

std::string Dataset::digest() const {
  Fnv1a h;
  for (const auto& def : universe_.features()) {
    h.bytes(def.name);
    h.separator();
    for (const auto& c : def.categories) {
      h.bytes(c);
      h.separator();
    }
    h.bytes("\x1e");
  }
  h.integer(codes_.rows());
  for (Eigen::Index r = 0; r < codes_.rows(); ++r)
    for (Eigen::Index f = 0; f < codes_.cols(); ++f) h.integer(codes_(r, f));
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h.state;
  return os.str();
}

TextTable parse_csv(std::string_view text, bool header) {
  std::vector<std::vector<std::string>> records;
  std::vector<int> record_lines;
  std::vector<std::string> current;
  std::string cell;
  bool in_quotes = false;
  bool record_open = false;
  int line = 1;
  int record_line = 1;

  auto end_record = [&] {
    current.push_back(std::move(cell));
    cell.clear();
    // A record that is a single empty cell is a blank line.
    if (!(current.size() == 1 && current.front().empty())) {
      records.push_back(std::move(current));
      record_lines.push_back(record_line);
    }
    current.clear();
    record_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (!record_open) {
      record_open = true;
      record_line = line;
    }
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        cell.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        current.push_back(std::move(cell));
        cell.clear();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        cell.push_back(ch);
    }
  }
  if (in_quotes) throw DataError("unterminated quoted cell starting on line " + std::to_string(record_line));
  if (record_open) end_record();

  if (records.empty() || (header && records.size() == 1)) throw DataError("empty table");

  TextTable table;
  std::size_t first = 0;
  if (header) {
    table.columns = records.front();
    first = 1;
  } else {
    for (std::size_t c = 0; c < records.front().size(); ++c) table.columns.push_back("col" + std::to_string(c + 1));
  }
  for (std::size_t r = first; r < records.size(); ++r) {
    if (records[r].size() != table.columns.size())
      throw DataError("ragged row " + std::to_string(record_lines[r]) + ": expected " +
                      std::to_string(table.columns.size()) + " cells, got " +
                      std::to_string(records[r].size()));
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

Dataset ingest_csv(const std::filesystem::path& path, bool header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Dataset::from_table(parse_csv(buffer.str(), header));
}

namespace {

std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

bool is_bin_label(std::string_view s) {
  if (s.size() < 5 || s.front() != '[' || s.back() != ']') return false;
  s = s.substr(1, s.size() - 2);
  // Split at the comma that yields two numbers (a leading '-' is never a comma).
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == ',' && parse_number(s.substr(0, i)) && parse_number(s.substr(i + 1))) return true;
  return false;
}

}  // namespace

Dataset discretize_equal_frequency(const Dataset& dataset, std::span<const std::string> numeric_columns,
                                   int bins) {
  if (bins < 1) throw ConfigError("bins must be >= 1");
  const auto& universe = dataset.universe();
  std::vector<FeatureDef> defs = universe.features();
  CodeMatrix codes = dataset.codes();
  const int n = dataset.row_count();

  for (const auto& column : numeric_columns) {
    const FeatureId f = universe.require_feature(column);
    const auto& categories = universe.feature(f).categories;

    const bool already_binned = std::all_of(categories.begin(), categories.end(), [](const std::string& c) {
      return c == kMissingCategory || is_bin_label(c);
    });
    if (already_binned) continue;

    std::vector<std::optional<double>> category_value(categories.size());
    for (std::size_t c = 0; c < categories.size(); ++c) {
      if (categories[c] == kMissingCategory) continue;
      category_value[c] = parse_number(categories[c]);
    }
    std::vector<int> rows;
    std::vector<double> values(static_cast<std::size_t>(n));
    bool has_missing = false;
    for (int r = 0; r < n; ++r) {
      const auto c = static_cast<std::size_t>(dataset.code(r, f));
      if (categories[c] == kMissingCategory) {
        has_missing = true;
        continue;
      }
      if (!category_value[c])
        throw DataError("row " + std::to_string(r + 1) + ", column '" + column + "': '" + categories[c] +
                        "' is not numeric");
      values[static_cast<std::size_t>(r)] = *category_value[c];
      rows.push_back(r);
    }

    std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) {
      return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    });
    const std::size_t count = rows.size();
    const std::size_t base = count / static_cast<std::size_t>(bins);
    const std::size_t extra = count % static_cast<std::size_t>(bins);
    auto nominal_bin = [&](std::size_t pos) -> std::size_t {
      const std::size_t wide = extra * (base + 1);
      if (pos < wide) return pos / (base + 1);
      return extra + (pos - wide) / base;
    };

    std::vector<std::size_t> assigned(count);
    for (std::size_t p = 0; p < count; ++p) {
      const double v = values[static_cast<std::size_t>(rows[p])];
      if (p > 0 && v == values[static_cast<std::size_t>(rows[p - 1])])
        assigned[p] = assigned[p - 1];
      else
        assigned[p] = p > 0 ? std::max(nominal_bin(p), assigned[p - 1]) : nominal_bin(p);
    }

    FeatureDef binned{column, {}};
    std::vector<int> bin_code(static_cast<std::size_t>(bins), -1);
    for (std::size_t p = 0; p < count;) {
      std::size_t q = p;
      while (q < count && assigned[q] == assigned[p]) ++q;
      const double lo = values[static_cast<std::size_t>(rows[p])];
      const double hi = values[static_cast<std::size_t>(rows[q - 1])];
      bin_code[assigned[p]] = binned.cardinality();
      binned.categories.push_back("[" + format_number(lo) + "," + format_number(hi) + "]");
      p = q;
    }
    for (std::size_t p = 0; p < count; ++p) codes(rows[p], f) = bin_code[assigned[p]];
    if (has_missing) {
      const int missing_code = binned.cardinality();
      binned.categories.emplace_back(kMissingCategory);
      for (int r = 0; r < n; ++r)
        if (categories[static_cast<std::size_t>(dataset.code(r, f))] == kMissingCategory) codes(r, f) = missing_code;
    }
    defs[static_cast<std::size_t>(f)] = std::move(binned);
  }
  return Dataset(ItemUniverse(std::move(defs)), std::move(codes));
}

Dataset remove_feature(const Dataset& dataset, FeatureId f) {
  const int k = dataset.feature_count();
  if (f < 0 || f >= k) throw ConfigError("unknown feature index " + std::to_string(f));
  CodeMatrix codes(dataset.row_count(), k - 1);
  if (f > 0) codes.leftCols(f) = dataset.codes().leftCols(f);
  if (f < k - 1) codes.rightCols(k - 1 - f) = dataset.codes().rightCols(k - 1 - f);
  return Dataset(dataset.universe().without(f), std::move(codes));
}

std::vector<std::string> get_labels(const Dataset& dataset, FeatureId f) {
  if (f < 0 || f >= dataset.feature_count()) throw ConfigError("unknown feature index " + std::to_string(f));
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(dataset.row_count()));
  for (int r = 0; r < dataset.row_count(); ++r) labels.push_back(dataset.value(r, f));
  return labels;
}

}  // namespace arl
