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

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "circuitum/circuit.hpp"
#include "circuitum/order.hpp"

namespace circuitum {

using GateSet = std::set<NodeId>;

/// Ordered sequence of disjoint nonempty gate sets covering all gates, where
/// cross-block "earlier" pairs always point forward.
using CoherentPartition = std::vector<GateSet>;

/// All gates in an order extending "earlier".
using Linearization = std::vector<NodeId>;

/// The "earlier" relation restricted to gates, as a transitively closed
/// poset. Building block for linearization and coherence machinery.
Poset gate_poset(const Circuit& c);

/// True iff no path between two members passes through a non-member gate.
bool is_convex(const Circuit& c, const GateSet& x);

/// True iff the members are pairwise incomparable under "earlier".
bool is_antichain(const Circuit& c, const GateSet& x);

/// The subcircuit induced by a convex gate set of a balanced
/// timeline-carrying circuit: non-members are removed and each timeline is
/// rewired straight through the member run it meets. Node and edge ids are
/// inherited, so the result is a pure function of the arguments.
Circuit slice(const Circuit& c, const GateSet& x);

struct PartitionCheck {
  bool ok = false;
  std::string reason;  // empty when ok

  explicit operator bool() const { return ok; }
};

/// Partition-plus-coherence test; never throws, failures carry a reason.
PartitionCheck is_coherent_partition(const Circuit& c,
                                     const std::vector<GateSet>& blocks);

struct ComposeResult {
  Circuit circuit;
  /// For each part, its surviving nodes mapped to their result ids. Gates
  /// always survive; inputs survive for the first part only and outputs for
  /// the last, interior boundary nodes being fused away.
  std::vector<std::map<NodeId, NodeId>> node_maps;
};

/// Stratum-wise serial composition of balanced circuits of one width: the
/// edge into each output of one part fuses with the edge out of the matching
/// input of the next, keeping the left edge's id. Original ids are kept
/// whenever they do not clash across parts; otherwise every id is prefixed
/// with "p<k>." for part k.
ComposeResult compose_with_maps(const std::vector<Circuit>& parts);
Circuit compose(const std::vector<Circuit>& parts);

/// Slices of the partition blocks, in order. Composing them back yields the
/// original circuit, ids included.
std::vector<Circuit> decompose(const Circuit& c, const CoherentPartition& p);

/// Antichain layering that fires every gate as early as possible: block t
/// holds the gates with exactly t-1 gates on their longest incoming chain.
/// Block count equals the circuit depth.
CoherentPartition layer_eager(const Circuit& c);

/// Antichain layering that fires every gate as late as possible while still
/// finishing in depth(c) blocks: a gate with k-1 gates on its longest
/// outgoing chain lands k blocks from the end.
CoherentPartition layer_lazy(const Circuit& c);

/// Deterministic coherent linearization: topological order with ties broken
/// by lexicographic gate id.
Linearization linearize(const Circuit& c);

/// Every coherent linearization, lexicographically. Raises TOO_MANY beyond
/// `cap` results.
std::vector<Linearization> all_linearizations(const Circuit& c,
                                              std::size_t cap);

/// Every coherent partition into antichains, ordered by greedy enumeration
/// over minimal gates. Stops quietly at `cap` results, reporting the
/// truncation through the flag.
std::vector<CoherentPartition> all_antichain_partitions(
    const Circuit& c, std::size_t cap, bool* truncated = nullptr);

/// Uniformly seeded random draws; identical across platforms for one seed.
CoherentPartition random_antichain_partition(const Circuit& c,
                                             std::mt19937_64& rng);
/// Random coherent partition with arbitrary (not necessarily antichain)
/// blocks: a random linearization cut into random chunks.
CoherentPartition random_coherent_partition(const Circuit& c,
                                            std::mt19937_64& rng);
Linearization random_linearization(const Circuit& c, std::mt19937_64& rng);

struct IsoWitness {
  std::map<NodeId, NodeId> node_map;
  std::map<EdgeId, EdgeId> edge_map;
};

/// A bijection preserving kinds, input/output ranks, incidence, per-gate
/// edge order and timelines, if one exists. Inputs and outputs are pinned by
/// rank, so only gates are searched.
std::optional<IsoWitness> isomorphic(const Circuit& a, const Circuit& b);

}  // namespace circuitum
