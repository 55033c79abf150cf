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

#include "circuitum/boolean.hpp"

#include <algorithm>
#include <cctype>

namespace circuitum {

std::uint32_t index_from_bits(const std::vector<int>& bits) {
  if (bits.size() > 31)
    throw Error(Err::WIDTH_TOO_LARGE,
                "words beyond 31 bits do not fit an index");
  std::uint32_t index = 0;
  for (const int bit : bits) {
    if (bit != 0 && bit != 1)
      throw Error(Err::BAD_INPUT_LENGTH,
                  "word contains the non-bit value " + std::to_string(bit));
    index = (index << 1) | static_cast<std::uint32_t>(bit);
  }
  return index;
}

std::vector<int> bits_from_index(std::uint32_t index, int length) {
  std::vector<int> bits(length);
  for (int t = 0; t < length; ++t)
    bits[t] = (index >> (length - 1 - t)) & 1;
  return bits;
}

BooleanFunction BooleanFunction::from_table(int k, int l,
                                            std::vector<std::uint32_t> table) {
  if (k < 0 || l < 0 || k > 20 || l > 20)
    throw Error(Err::WIDTH_TOO_LARGE,
                "table arities must lie in 0..20");
  if (table.size() != (std::size_t{1} << k))
    throw Error(Err::ARITY_MISMATCH,
                std::to_string(k) + "-ary table needs " +
                    std::to_string(std::size_t{1} << k) + " rows, got " +
                    std::to_string(table.size()));
  for (const std::uint32_t row : table)
    if (row >= (std::uint32_t{1} << l))
      throw Error(Err::ARITY_MISMATCH,
                  "table row " + std::to_string(row) +
                      " does not fit " + std::to_string(l) + " output bits");
  return BooleanFunction(k, l, std::move(table));
}

BooleanFunction BooleanFunction::builtin(const std::string& name) {
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  if (key == "NOT" || key == "X") return from_table(1, 1, {1, 0});
  if (key == "ID") return from_table(1, 1, {0, 1});
  if (key == "CNOT") return from_table(2, 2, {0, 1, 3, 2});
  if (key == "SWAP") return from_table(2, 2, {0, 2, 1, 3});
  if (key == "TOFFOLI") return from_table(3, 3, {0, 1, 2, 3, 4, 5, 7, 6});
  if (key == "FREDKIN") return from_table(3, 3, {0, 1, 2, 3, 4, 6, 5, 7});
  if (key == "AND-EMBED") return from_table(2, 2, {0, 0, 2, 3});
  if (key == "XOR-EMBED") return from_table(2, 2, {0, 3, 2, 1});
  throw Error(Err::UNKNOWN_BUILTIN, "no builtin function named " + name);
}

std::uint32_t BooleanFunction::apply_index(std::uint32_t x) const {
  if (x >= table_.size())
    throw Error(Err::ARITY_MISMATCH,
                "argument " + std::to_string(x) + " does not fit " +
                    std::to_string(k_) + " input bits");
  return table_[x];
}

std::vector<int> BooleanFunction::apply(const std::vector<int>& bits) const {
  if (static_cast<int>(bits.size()) != k_)
    throw Error(Err::ARITY_MISMATCH,
                "expected " + std::to_string(k_) + " argument bits, got " +
                    std::to_string(bits.size()));
  return bits_from_index(apply_index(index_from_bits(bits)), l_);
}

bool BooleanFunction::is_permutation() const {
  if (k_ != l_) return false;
  std::vector<bool> seen(table_.size(), false);
  for (const std::uint32_t row : table_) {
    if (seen[row]) return false;
    seen[row] = true;
  }
  return true;
}

std::optional<BooleanFunction> invert(const BooleanFunction& f) {
  if (!f.is_permutation()) return std::nullopt;
  std::vector<std::uint32_t> inverse(f.table().size());
  for (std::uint32_t x = 0; x < f.table().size(); ++x)
    inverse[f.table()[x]] = x;
  return BooleanFunction::from_table(f.arity_in(), f.arity_out(),
                                     std::move(inverse));
}

BooleanFunction compose_tables(const BooleanFunction& outer,
                               const BooleanFunction& inner) {
  if (inner.arity_out() != outer.arity_in())
    throw Error(Err::ARITY_MISMATCH,
                "cannot feed " + std::to_string(inner.arity_out()) +
                    " bits into a " + std::to_string(outer.arity_in()) +
                    "-ary function");
  std::vector<std::uint32_t> table(inner.table().size());
  for (std::uint32_t x = 0; x < table.size(); ++x)
    table[x] = outer.apply_index(inner.apply_index(x));
  return BooleanFunction::from_table(inner.arity_in(), outer.arity_out(),
                                     std::move(table));
}

const BooleanFunction& BooleanCircuit::fn(const NodeId& gate) const {
  auto it = fns_.find(gate);
  if (it == fns_.end())
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  return it->second;
}

const std::vector<EdgeId>& BooleanCircuit::arg_edges(const NodeId& gate) const {
  auto it = args_.find(gate);
  if (it == args_.end())
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  return it->second;
}

const std::vector<EdgeId>& BooleanCircuit::val_edges(const NodeId& gate) const {
  auto it = vals_.find(gate);
  if (it == vals_.end())
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  return it->second;
}

BooleanCircuit attach_boolean(const Circuit& c,
                              const std::map<NodeId, GateSpec>& specs) {
  for (const auto& [gid, spec] : specs) {
    (void)spec;
    if (!c.is_gate(gid))
      throw Error(Err::UNKNOWN_GATE, gid + " is not a gate of the circuit");
  }

  BooleanCircuit b;
  b.base_ = c;
  // A supplied edge map must be a bijection onto the incident edges; a
  // timeline-carrying circuit additionally pins it to the timeline order.
  auto resolve = [&c](const NodeId& gid, const std::vector<EdgeId>& given,
                      const std::vector<EdgeId>& own, const char* side) {
    if (given.empty()) return own;
    std::vector<EdgeId> sorted_given = given;
    std::vector<EdgeId> sorted_own = own;
    std::sort(sorted_given.begin(), sorted_given.end());
    std::sort(sorted_own.begin(), sorted_own.end());
    if (sorted_given != sorted_own)
      throw Error(Err::BAD_EDGE_MAP,
                  std::string(side) + " map of gate " + gid +
                      " is not a bijection onto the incident edges");
    if (c.has_timelines() && given != own)
      throw Error(Err::BAD_EDGE_MAP,
                  std::string(side) + " map of gate " + gid +
                      " deviates from the ascending timeline order");
    return given;
  };

  for (const auto& gid : c.gates()) {
    auto it = specs.find(gid);
    if (it == specs.end())
      throw Error(Err::MISSING_FUNCTION,
                  "gate " + gid + " has no Boolean function");
    const GateSpec& spec = it->second;
    const auto& ins = c.gate_in(gid);
    const auto& outs = c.gate_out(gid);
    if (spec.fn.arity_in() != static_cast<int>(ins.size()) ||
        spec.fn.arity_out() != static_cast<int>(outs.size()))
      throw Error(Err::ARITY_MISMATCH,
                  "gate " + gid + " has " + std::to_string(ins.size()) +
                      " incoming and " + std::to_string(outs.size()) +
                      " outgoing edges but a " +
                      std::to_string(spec.fn.arity_in()) + "-to-" +
                      std::to_string(spec.fn.arity_out()) + " table");
    b.fns_.emplace(gid, spec.fn);
    b.args_[gid] = resolve(gid, spec.args, ins, "argument");
    b.vals_[gid] = resolve(gid, spec.vals, outs, "value");
  }
  b.order_ = linearize(c);
  return b;
}

namespace {

Valuation seed_inputs(const Circuit& c, const std::vector<int>& input) {
  if (input.size() != c.inputs().size())
    throw Error(Err::BAD_INPUT_LENGTH,
                "circuit has " + std::to_string(c.inputs().size()) +
                    " inputs, word has " + std::to_string(input.size()) +
                    " bits");
  for (const int bit : input)
    if (bit != 0 && bit != 1)
      throw Error(Err::BAD_INPUT_LENGTH,
                  "word contains the non-bit value " + std::to_string(bit));
  Valuation val;
  for (std::size_t i = 0; i < c.inputs().size(); ++i)
    for (const auto& eid : c.out_edges(c.inputs()[i])) val[eid] = input[i];
  return val;
}

void fire(const BooleanCircuit& b, const NodeId& gid, Valuation& val) {
  std::vector<int> args;
  for (const auto& eid : b.arg_edges(gid)) args.push_back(val.at(eid));
  const std::vector<int> value = b.fn(gid).apply(args);
  const auto& outs = b.val_edges(gid);
  for (std::size_t j = 0; j < outs.size(); ++j) val[outs[j]] = value[j];
}

std::vector<int> read_outputs(const Circuit& c, const Valuation& val) {
  std::vector<int> out;
  out.reserve(c.outputs().size());
  for (const auto& nid : c.outputs()) out.push_back(val.at(c.in_edges(nid)[0]));
  return out;
}

}  // namespace

Valuation valuate(const BooleanCircuit& b, const std::vector<int>& input) {
  Valuation val = seed_inputs(b.base(), input);
  for (const auto& gid : b.order()) fire(b, gid, val);
  return val;
}

std::vector<int> fun(const BooleanCircuit& b, const std::vector<int>& input) {
  return read_outputs(b.base(), valuate(b, input));
}

ComputationTrace run_schedule(const BooleanCircuit& b,
                              const std::vector<int>& input,
                              const CoherentPartition& p) {
  const PartitionCheck check = is_coherent_partition(b.base(), p);
  if (!check) throw Error(Err::NOT_COHERENT, check.reason);

  ComputationTrace trace;
  trace.input = input;
  trace.schedule = p;
  Valuation val = seed_inputs(b.base(), input);
  std::map<NodeId, std::size_t> position;
  for (std::size_t i = 0; i < b.order().size(); ++i)
    position[b.order()[i]] = i;
  for (const auto& block : p) {
    // Blocks need not be antichains; firing a block in dependency order
    // models the agent completing the whole block within one step.
    std::vector<NodeId> sequence(block.begin(), block.end());
    std::sort(sequence.begin(), sequence.end(),
              [&position](const NodeId& x, const NodeId& y) {
                return position.at(x) < position.at(y);
              });
    for (const auto& gid : sequence) fire(b, gid, val);
    trace.fired.push_back(block);
  }
  trace.output = read_outputs(b.base(), val);
  trace.valuation = std::move(val);
  return trace;
}

BooleanCircuit compose_boolean(const std::vector<BooleanCircuit>& parts) {
  std::vector<Circuit> bases;
  bases.reserve(parts.size());
  for (const auto& part : parts) bases.push_back(part.base());
  const ComposeResult composed = compose_with_maps(bases);
  std::map<NodeId, GateSpec> specs;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& gid : parts[i].base().gates())
      specs.emplace(composed.node_maps[i].at(gid),
                    GateSpec{parts[i].fn(gid), {}, {}});
  return attach_boolean(composed.circuit, specs);
}

BooleanCircuit slice_boolean(const BooleanCircuit& b, const GateSet& x) {
  const Circuit piece = slice(b.base(), x);
  std::map<NodeId, GateSpec> specs;
  for (const auto& gid : x) specs.emplace(gid, GateSpec{b.fn(gid), {}, {}});
  return attach_boolean(piece, specs);
}

std::vector<BooleanCircuit> decompose_boolean(const BooleanCircuit& b,
                                              const CoherentPartition& p) {
  const std::vector<Circuit> factors = decompose(b.base(), p);
  std::vector<BooleanCircuit> out;
  out.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::map<NodeId, GateSpec> specs;
    for (const auto& gid : p[i]) specs.emplace(gid, GateSpec{b.fn(gid), {}, {}});
    out.push_back(attach_boolean(factors[i], specs));
  }
  return out;
}

BooleanFunction circuit_table(const BooleanCircuit& b, int width_cap) {
  const int m = static_cast<int>(b.base().inputs().size());
  const int n = static_cast<int>(b.base().outputs().size());
  if (m > width_cap)
    throw Error(Err::WIDTH_TOO_LARGE,
                std::to_string(m) + " inputs exceed the table cap of " +
                    std::to_string(width_cap));
  std::vector<std::uint32_t> table(std::size_t{1} << m);
  for (std::uint32_t x = 0; x < table.size(); ++x)
    table[x] = index_from_bits(fun(b, bits_from_index(x, m)));
  return BooleanFunction::from_table(m, n, std::move(table));
}

bool is_reversible_circuit(const BooleanCircuit& b, ReversibilityMethod method,
                           int width_cap) {
  if (!b.base().is_balanced())
    throw Error(Err::NOT_BALANCED,
                "reversibility is defined for balanced circuits");
  auto by_gates = [&b] {
    for (const auto& gid : b.base().gates())
      if (!b.fn(gid).is_permutation()) return false;
    return true;
  };
  auto by_table = [&b, width_cap] {
    return circuit_table(b, width_cap).is_permutation();
  };
  switch (method) {
    case ReversibilityMethod::ByGates:
      return by_gates();
    case ReversibilityMethod::ByTable:
      return by_table();
    case ReversibilityMethod::CrossCheck: {
      const bool gates = by_gates();
      const bool table = by_table();
      if (gates != table)
        throw Error(Err::CROSS_CHECK_FAILED,
                    std::string("gate-wise says ") +
                        (gates ? "reversible" : "irreversible") +
                        ", table says the opposite");
      return gates;
    }
  }
  throw Error(Err::CROSS_CHECK_FAILED, "unreachable method");
}

}  // namespace circuitum
