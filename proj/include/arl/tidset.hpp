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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace arl {

/// Fixed-size bitset over transaction indices.
class TidSet {
 public:
  TidSet() = default;
  explicit TidSet(std::size_t size, bool filled = false)
      : size_(size), words_((size + 63) / 64, filled ? ~std::uint64_t{0} : 0) {
    if (filled) trim();
  }

  std::size_t size() const { return size_; }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  std::size_t count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  TidSet& operator&=(const TidSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  TidSet& operator|=(const TidSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  friend TidSet operator&(TidSet lhs, const TidSet& rhs) { return lhs &= rhs; }
  friend TidSet operator|(TidSet lhs, const TidSet& rhs) { return lhs |= rhs; }

  TidSet complement() const {
    TidSet out = *this;
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  /// popcount(*this & other) without materializing the intersection.
  std::size_t intersect_count(const TidSet& other) const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return total;
  }

  bool operator==(const TidSet&) const = default;

 private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace arl
