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

#include "circuitum/order.hpp"

#include <algorithm>
#include <map>

namespace circuitum {

Poset::Poset(std::set<std::string> elements,
             std::set<std::pair<std::string, std::string>> strictly_less,
             bool close)
    : elements_(std::move(elements)), less_(std::move(strictly_less)) {
  for (const auto& [a, b] : less_) {
    if (!elements_.count(a) || !elements_.count(b))
      throw Error(Err::INVALID_POSET,
                  "relation pair (" + a + ", " + b + ") leaves the element set");
  }
  if (close) {
    // Warshall closure over the successor sets.
    std::map<std::string, std::set<std::string>> succ;
    for (const auto& [a, b] : less_) succ[a].insert(b);
    for (const auto& via : elements_) {
      for (const auto& a : elements_) {
        if (a == via || !succ[a].count(via)) continue;
        succ[a].insert(succ[via].begin(), succ[via].end());
      }
    }
    less_.clear();
    for (const auto& [a, bs] : succ)
      for (const auto& b : bs) less_.insert({a, b});
  } else {
    for (const auto& [a, b] : less_)
      for (const auto& [c, d] : less_)
        if (b == c && !less_.count({a, d}))
          throw Error(Err::INVALID_POSET,
                      "relation is not transitive: (" + a + ", " + b +
                          ") and (" + c + ", " + d + ") without (" + a + ", " +
                          d + ")");
  }
  for (const auto& e : elements_)
    if (less_.count({e, e}))
      throw Error(Err::INVALID_POSET,
                  "relation is not irreflexive at " + e);
}

bool Poset::less(const std::string& a, const std::string& b) const {
  return less_.count({a, b}) > 0;
}

bool Poset::comparable(const std::string& a, const std::string& b) const {
  return less(a, b) || less(b, a);
}

namespace {

// Position of every element; rejects anything that is not a permutation of
// `universe`.
std::map<std::string, std::size_t> positions(
    const LinearOrder& order, const std::set<std::string>& universe,
    Err mismatch) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!universe.count(order[i]))
      throw Error(mismatch, "order mentions unknown element " + order[i]);
    if (!pos.emplace(order[i], i).second)
      throw Error(mismatch, "order repeats element " + order[i]);
  }
  if (pos.size() != universe.size())
    throw Error(mismatch, "order misses elements of the set");
  return pos;
}

}  // namespace

bool is_coherent(const Poset& poset, const LinearOrder& order) {
  const auto pos =
      positions(order, poset.elements(), Err::NOT_A_PERMUTATION);
  for (const auto& [a, b] : poset.strictly_less())
    if (pos.at(a) >= pos.at(b)) return false;
  return true;
}

std::size_t inversion_distance(const LinearOrder& a, const LinearOrder& b) {
  std::set<std::string> universe(a.begin(), a.end());
  if (universe.size() != a.size())
    throw Error(Err::ELEMENT_MISMATCH, "first order repeats an element");
  const auto pos_b = positions(b, universe, Err::ELEMENT_MISMATCH);
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (pos_b.at(a[i]) > pos_b.at(a[j])) ++count;
  return count;
}

TranspositionPath transposition_path(const Poset& poset,
                                     const LinearOrder& from,
                                     const LinearOrder& to) {
  if (!is_coherent(poset, from))
    throw Error(Err::INCOHERENT_INPUT, "start order is not coherent");
  if (!is_coherent(poset, to))
    throw Error(Err::INCOHERENT_INPUT, "target order is not coherent");

  std::map<std::string, std::size_t> target_pos;
  for (std::size_t i = 0; i < to.size(); ++i) target_pos[to[i]] = i;

  TranspositionPath path;
  path.start = from;
  LinearOrder current = from;
  // Whenever current differs from the target it has, viewed as a sequence of
  // target positions, an adjacent inversion; swapping the leftmost one
  // removes exactly one differentiating pair. Both orders being coherent
  // forces every swapped pair to be incomparable, so every intermediate
  // order stays coherent.
  for (;;) {
    std::size_t i = 0;
    while (i + 1 < current.size() &&
           target_pos.at(current[i]) < target_pos.at(current[i + 1]))
      ++i;
    if (i + 1 >= current.size()) break;
    std::swap(current[i], current[i + 1]);
    path.swaps.push_back(i + 1);
  }
  return path;
}

std::vector<LinearOrder> replay_path(const TranspositionPath& path) {
  std::vector<LinearOrder> orders{path.start};
  LinearOrder current = path.start;
  for (const std::size_t left : path.swaps) {
    if (left < 1 || left >= current.size())
      throw Error(Err::ELEMENT_MISMATCH,
                  "swap position " + std::to_string(left) + " out of range");
    std::swap(current[left - 1], current[left]);
    orders.push_back(current);
  }
  return orders;
}

namespace {

void extend(const Poset& poset, std::vector<std::string>& remaining,
            LinearOrder& prefix, std::size_t cap,
            std::vector<LinearOrder>& out) {
  if (remaining.empty()) {
    if (out.size() == cap)
      throw Error(Err::TOO_MANY,
                  "more than " + std::to_string(cap) + " extensions");
    out.push_back(prefix);
    return;
  }
  // remaining stays sorted, so extensions come out lexicographically.
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    const std::string candidate = remaining[i];
    bool minimal = true;
    for (const auto& other : remaining)
      if (poset.less(other, candidate)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    remaining.erase(remaining.begin() + i);
    prefix.push_back(candidate);
    extend(poset, remaining, prefix, cap, out);
    prefix.pop_back();
    remaining.insert(remaining.begin() + i, candidate);
  }
}

}  // namespace

std::vector<LinearOrder> all_extensions(const Poset& poset, std::size_t cap) {
  std::vector<std::string> remaining(poset.elements().begin(),
                                     poset.elements().end());
  LinearOrder prefix;
  std::vector<LinearOrder> out;
  extend(poset, remaining, prefix, cap, out);
  return out;
}

}  // namespace circuitum
