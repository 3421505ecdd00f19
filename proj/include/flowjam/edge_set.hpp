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


#ifndef FLOWJAM_EDGE_SET_HPP_
#define FLOWJAM_EDGE_SET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace flowjam {

using EdgeId = int;

// Fixed-universe set of edge indices stored as a bitmask. Iteration and
// to_vector() yield indices in ascending order.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  EdgeSet(std::size_t universe, std::span<const EdgeId> edges);

  std::size_t universe() const { return universe_; }

  bool contains(EdgeId e) const {
    return (words_[static_cast<std::size_t>(e) >> 6] >> (e & 63)) & 1U;
  }
  void insert(EdgeId e) {
    words_[static_cast<std::size_t>(e) >> 6] |= std::uint64_t{1} << (e & 63);
  }
  void erase(EdgeId e) {
    words_[static_cast<std::size_t>(e) >> 6] &= ~(std::uint64_t{1} << (e & 63));
  }

  std::size_t size() const;
  bool empty() const;

  EdgeSet& operator|=(const EdgeSet& other);
  friend EdgeSet operator|(EdgeSet lhs, const EdgeSet& rhs) {
    lhs |= rhs;
    return lhs;
  }
  bool is_subset_of(const EdgeSet& other) const;
  bool intersects(const EdgeSet& other) const;

  std::vector<EdgeId> to_vector() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = std::countr_zero(bits);
        fn(static_cast<EdgeId>(w * 64 + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

  std::size_t hash() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  // Lexicographic order on the ascending index sequence.
  friend bool lexicographically_less(const EdgeSet& a, const EdgeSet& b);

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct EdgeSetHash {
  std::size_t operator()(const EdgeSet& s) const { return s.hash(); }
};

}  // namespace flowjam

#endif  // FLOWJAM_EDGE_SET_HPP_
