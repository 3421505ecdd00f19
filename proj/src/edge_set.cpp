// Copyright 2026 The flowjam Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "flowjam/edge_set.hpp"

#include <algorithm>

namespace flowjam {

EdgeSet::EdgeSet(std::size_t universe, std::span<const EdgeId> edges)
    : EdgeSet(universe) {
  for (EdgeId e : edges) insert(e);
}

std::size_t EdgeSet::size() const {
  std::size_t count = 0;
  for (std::uint64_t w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

bool EdgeSet::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool EdgeSet::intersects(const EdgeSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::vector<EdgeId> EdgeSet::to_vector() const {
  std::vector<EdgeId> out;
  for_each([&](EdgeId e) { out.push_back(e); });
  return out;
}

std::size_t EdgeSet::hash() const {
  // FNV-1a over the words.
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint64_t w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

bool lexicographically_less(const EdgeSet& a, const EdgeSet& b) {
  const auto va = a.to_vector();
  const auto vb = b.to_vector();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

}  // namespace flowjam
