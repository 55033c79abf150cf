// Copyright 2026 The Circuitum Authors
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

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circuitum/error.hpp"

namespace circuitum {

/// Finite strict partial order on opaque string ids.
class Poset {
 public:
  /// With close=true the relation may be any edge list over the elements;
  /// its transitive closure is taken and checked irreflexive. With
  /// close=false the relation itself must already be transitive and
  /// irreflexive. Either way a violation raises INVALID_POSET.
  Poset(std::set<std::string> elements,
        std::set<std::pair<std::string, std::string>> strictly_less,
        bool close = true);

  const std::set<std::string>& elements() const { return elements_; }
  const std::set<std::pair<std::string, std::string>>& strictly_less() const {
    return less_;
  }

  bool less(const std::string& a, const std::string& b) const;
  bool comparable(const std::string& a, const std::string& b) const;

 private:
  std::set<std::string> elements_;
  std::set<std::pair<std::string, std::string>> less_;
};

/// A sequence listing every element of some set exactly once.
using LinearOrder = std::vector<std::string>;

/// True iff every strictly-less pair of the poset appears in order.
/// The order must be a permutation of the poset's elements.
bool is_coherent(const Poset& poset, const LinearOrder& order);

/// Number of unordered pairs placed differently by the two orders, which
/// must range over the same element set.
std::size_t inversion_distance(const LinearOrder& a, const LinearOrder& b);

struct TranspositionPath {
  LinearOrder start;
  /// 1-based position of the left element of each adjacent swap, applied in
  /// sequence to `start`.
  std::vector<std::size_t> swaps;
};

/// Transforms one coherent order into another through adjacent swaps such
/// that every intermediate order stays coherent. The path length equals the
/// inversion distance and every swapped pair is incomparable in the poset.
/// When several adjacent pairs qualify the leftmost is chosen, making the
/// result deterministic.
TranspositionPath transposition_path(const Poset& poset,
                                     const LinearOrder& from,
                                     const LinearOrder& to);

/// All orders visited by the path: element 0 is the start, element i the
/// order after i swaps, the last one the target.
std::vector<LinearOrder> replay_path(const TranspositionPath& path);

/// Every linear order coherent with the poset, in lexicographic order of the
/// element sequence. Raises TOO_MANY beyond `cap` results.
std::vector<LinearOrder> all_extensions(const Poset& poset, std::size_t cap);

}  // namespace circuitum
