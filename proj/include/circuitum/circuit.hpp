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
#include <string>
#include <vector>

#include "circuitum/error.hpp"

namespace circuitum {

// Node and edge ids are caller-supplied strings, unique within their
// namespaces. All iteration is over std::map, so every derived sequence is
// deterministic (lexicographic in the ids).
using NodeId = std::string;
using EdgeId = std::string;

enum class NodeType { Input, Output, Gate };

struct NodeKind {
  NodeType type = NodeType::Gate;
  int rank = 0;  // 1-based position; meaningful for inputs and outputs only

  bool operator==(const NodeKind&) const = default;
};

struct EdgeEnds {
  NodeId source;
  NodeId target;

  bool operator==(const EdgeEnds&) const = default;
};

/// Raw material for the builder. Maps enforce id uniqueness by construction.
///
/// `gate_in` / `gate_out` give the per-gate argument/value edge order. They
/// may be omitted for any gate: without timelines the order defaults to
/// lexicographic edge id, with timelines the order is forced to ascending
/// timeline regardless of what was supplied.
///
/// `timelines` is the balanced-mode switch: when present it must be total
/// over the edges and the circuit must be balanced; when absent the circuit
/// is a general one and timeline-dependent operations are unavailable.
struct RawCircuit {
  std::map<NodeId, NodeKind> nodes;
  std::map<EdgeId, EdgeEnds> edges;
  std::map<NodeId, std::vector<EdgeId>> gate_in;
  std::map<NodeId, std::vector<EdgeId>> gate_out;
  std::map<EdgeId, int> timelines;

  void add_input(const NodeId& id, int rank);
  void add_output(const NodeId& id, int rank);
  void add_gate(const NodeId& id);
  void add_edge(const EdgeId& id, const NodeId& source, const NodeId& target,
                int timeline = 0);  // timeline 0 = none
};

struct Violation {
  Err code;
  NodeId node;   // offending node id, if any
  EdgeId edge;   // offending edge id, if any
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Err code) const;
  std::string to_string() const;
};

class Circuit {
 public:
  /// The empty circuit: no nodes, no edges, balanced at width 0.
  Circuit() = default;

  const std::map<NodeId, NodeKind>& nodes() const { return nodes_; }
  const std::map<EdgeId, EdgeEnds>& edges() const { return edges_; }

  /// Input/output node ids in rank order (index 0 holds rank 1).
  const std::vector<NodeId>& inputs() const { return inputs_; }
  const std::vector<NodeId>& outputs() const { return outputs_; }
  /// Gate ids in lexicographic order.
  const std::vector<NodeId>& gates() const { return gates_; }

  bool is_gate(const NodeId& id) const;
  const NodeKind& kind(const NodeId& id) const;

  /// Ordered argument/value edges of a gate. In a timeline-carrying circuit
  /// the order is ascending timeline.
  const std::vector<EdgeId>& gate_in(const NodeId& gate) const;
  const std::vector<EdgeId>& gate_out(const NodeId& gate) const;

  /// Incident edges of any node, sorted by edge id.
  const std::vector<EdgeId>& in_edges(const NodeId& id) const;
  const std::vector<EdgeId>& out_edges(const NodeId& id) const;

  const EdgeEnds& ends(const EdgeId& id) const;

  bool has_timelines() const { return !timelines_.empty() || edges_.empty(); }
  const std::map<EdgeId, int>& timelines() const { return timelines_; }
  int timeline(const EdgeId& id) const;

  /// True iff there is a directed path from `a` to `b`. Strict partial order.
  bool earlier(const NodeId& a, const NodeId& b) const;

  /// Maximum number of gates involved in any path; 0 for gate-free circuits.
  int depth() const { return depth_; }

  /// Structural balance: every gate has equal in/out degree and the numbers
  /// of input and output nodes coincide.
  bool is_balanced() const { return balanced_; }

  /// Number of input nodes of a balanced circuit. Throws NOT_BALANCED.
  int width() const;

  /// Shared in/out degree of a balanced gate. Throws NOT_BALANCED_GATE.
  int gate_arity(const NodeId& gate) const;

  /// Ascending timeline indices the gate is active on. Throws NO_TIMELINES.
  std::vector<int> active_timelines(const NodeId& gate) const;

  /// One horizontal stratum of a timeline-carrying circuit: the edges
  /// threading from input `t` to output `t` and the gates they pass through.
  /// edges.size() == gates.size() + 1; edges[i] enters gates[i].
  struct Thread {
    std::vector<EdgeId> edges;
    std::vector<NodeId> gates;
  };
  Thread thread(int timeline) const;

  const EdgeId& input_edge(int timeline) const;
  const EdgeId& output_edge(int timeline) const;

  /// Structural equality: same ids, kinds, ranks, incidence, edge orders and
  /// timelines. Stronger than isomorphism.
  bool identical(const Circuit& other) const;

 private:
  friend struct CircuitBuilder;

  std::map<NodeId, NodeKind> nodes_;
  std::map<EdgeId, EdgeEnds> edges_;
  std::map<EdgeId, int> timelines_;
  std::vector<NodeId> inputs_;
  std::vector<NodeId> outputs_;
  std::vector<NodeId> gates_;
  std::map<NodeId, std::vector<EdgeId>> gate_in_;
  std::map<NodeId, std::vector<EdgeId>> gate_out_;
  std::map<NodeId, std::vector<EdgeId>> node_in_;
  std::map<NodeId, std::vector<EdgeId>> node_out_;
  bool balanced_ = true;
  int depth_ = 0;
};

struct BuildResult {
  std::optional<Circuit> circuit;
  ValidationReport report;

  bool ok() const { return circuit.has_value(); }
};

/// Validates every invariant and either yields the circuit or a report
/// listing all violations found, not just the first.
BuildResult build_circuit(const RawCircuit& raw);

/// Convenience for callers that treat validation failure as fatal.
Circuit build_or_throw(const RawCircuit& raw);

}  // namespace circuitum
