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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circuitum/circuit.hpp"
#include "circuitum/decompose.hpp"

namespace circuitum {

/// Bit words use one convention everywhere: position 1 of a word is the
/// most significant bit of its index. A width-w word x1..xw therefore has
/// index sum of x_t * 2^(w-t).
std::uint32_t index_from_bits(const std::vector<int>& bits);
std::vector<int> bits_from_index(std::uint32_t index, int length);

/// Total function {0,1}^k -> {0,1}^l as an explicit table of 2^k output
/// words, each stored as an index.
class BooleanFunction {
 public:
  static BooleanFunction from_table(int k, int l,
                                    std::vector<std::uint32_t> table);
  /// NOT, ID, X, CNOT, SWAP, TOFFOLI, FREDKIN, AND-EMBED, XOR-EMBED
  /// (case-insensitive).
  static BooleanFunction builtin(const std::string& name);

  int arity_in() const { return k_; }
  int arity_out() const { return l_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  std::uint32_t apply_index(std::uint32_t x) const;
  std::vector<int> apply(const std::vector<int>& bits) const;

  bool is_permutation() const;

  bool operator==(const BooleanFunction&) const = default;

 private:
  BooleanFunction(int k, int l, std::vector<std::uint32_t> table)
      : k_(k), l_(l), table_(std::move(table)) {}

  int k_;
  int l_;
  std::vector<std::uint32_t> table_;
};

/// The two-sided inverse table, or nothing when f is not a bijection
/// between equal-length words.
std::optional<BooleanFunction> invert(const BooleanFunction& f);

/// outer after inner; needs inner's output arity = outer's input arity.
BooleanFunction compose_tables(const BooleanFunction& outer,
                               const BooleanFunction& inner);

struct GateSpec {
  BooleanFunction fn;
  /// Argument position -> incoming edge and value position -> outgoing
  /// edge. Empty means the circuit's own edge order (ascending timelines
  /// when the circuit carries them). Balanced timeline-carrying circuits
  /// accept only that order.
  std::vector<EdgeId> args;
  std::vector<EdgeId> vals;
};

/// A circuit whose every gate computes an explicit Boolean function of its
/// argument edges.
class BooleanCircuit {
 public:
  const Circuit& base() const { return base_; }
  const BooleanFunction& fn(const NodeId& gate) const;
  const std::vector<EdgeId>& arg_edges(const NodeId& gate) const;
  const std::vector<EdgeId>& val_edges(const NodeId& gate) const;
  /// Deterministic firing order used by the evaluators.
  const Linearization& order() const { return order_; }

 private:
  friend BooleanCircuit attach_boolean(const Circuit&,
                                       const std::map<NodeId, GateSpec>&);
  BooleanCircuit() = default;

  Circuit base_;
  std::map<NodeId, BooleanFunction> fns_;
  std::map<NodeId, std::vector<EdgeId>> args_;
  std::map<NodeId, std::vector<EdgeId>> vals_;
  Linearization order_;  // cached firing order for evaluation
};

BooleanCircuit attach_boolean(const Circuit& c,
                              const std::map<NodeId, GateSpec>& specs);

/// Bit per edge, total over the circuit's edges.
using Valuation = std::map<EdgeId, int>;

/// The unique valuation extending the input word: edges out of input node i
/// carry bit i, every value edge carries its component of the gate function
/// applied to the argument edges.
Valuation valuate(const BooleanCircuit& b, const std::vector<int>& input);

/// Output-edge bits in output rank order.
std::vector<int> fun(const BooleanCircuit& b, const std::vector<int>& input);

struct ComputationTrace {
  std::vector<int> input;
  CoherentPartition schedule;
  std::vector<GateSet> fired;  // per step, equals the schedule blocks
  Valuation valuation;
  std::vector<int> output;
};

/// Fires the schedule's blocks in order over a growing valuation. Any
/// coherent partition is accepted; the result always matches valuate/fun.
ComputationTrace run_schedule(const BooleanCircuit& b,
                              const std::vector<int>& input,
                              const CoherentPartition& p);

/// Boolean composition over the composed bases; the composite computes the
/// left-to-right pipeline of the part functions.
BooleanCircuit compose_boolean(const std::vector<BooleanCircuit>& parts);

/// The Boolean slice: the syntactic slice carrying the members' functions.
BooleanCircuit slice_boolean(const BooleanCircuit& b, const GateSet& x);
std::vector<BooleanCircuit> decompose_boolean(const BooleanCircuit& b,
                                              const CoherentPartition& p);

/// Whole-circuit truth table by enumerating all inputs; refuses more than
/// `width_cap` input nodes.
BooleanFunction circuit_table(const BooleanCircuit& b, int width_cap = 12);

enum class ReversibilityMethod { ByGates, ByTable, CrossCheck };

/// Whether the circuit computes a bijection. ByGates tests every gate table
/// for being a permutation; ByTable enumerates the circuit function (cap
/// applies); CrossCheck runs both and demands agreement.
bool is_reversible_circuit(const BooleanCircuit& b, ReversibilityMethod method,
                           int width_cap = 12);

}  // namespace circuitum
