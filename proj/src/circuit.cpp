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

#include "circuitum/circuit.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace circuitum {

void RawCircuit::add_input(const NodeId& id, int rank) {
  nodes[id] = NodeKind{NodeType::Input, rank};
}

void RawCircuit::add_output(const NodeId& id, int rank) {
  nodes[id] = NodeKind{NodeType::Output, rank};
}

void RawCircuit::add_gate(const NodeId& id) {
  nodes[id] = NodeKind{NodeType::Gate, 0};
}

void RawCircuit::add_edge(const EdgeId& id, const NodeId& source,
                          const NodeId& target, int timeline) {
  edges[id] = EdgeEnds{source, target};
  if (timeline > 0) timelines[id] = timeline;
}

bool ValidationReport::has(Err code) const {
  for (const auto& v : violations)
    if (v.code == code) return true;
  return false;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << err_name(v.code);
    if (!v.node.empty()) out << " node=" << v.node;
    if (!v.edge.empty()) out << " edge=" << v.edge;
    out << ": " << v.message << "\n";
  }
  return out.str();
}

namespace {

std::string join(const std::vector<std::string>& parts, std::size_t cap) {
  std::string out;
  for (std::size_t i = 0; i < parts.size() && i < cap; ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  if (parts.size() > cap) out += ", ...";
  return out;
}

// Checks that the ranks of `ids` (all of the given type) form exactly 1..n.
void check_ranks(const std::map<NodeId, NodeKind>& nodes,
                 const std::vector<NodeId>& ids, const char* what,
                 ValidationReport& report) {
  const int n = static_cast<int>(ids.size());
  std::map<int, std::vector<NodeId>> by_rank;
  for (const auto& id : ids) {
    const int rank = nodes.at(id).rank;
    if (rank < 1 || rank > n) {
      std::ostringstream msg;
      msg << what << " rank " << rank << " outside 1.." << n;
      report.violations.push_back({Err::BAD_RANK, id, "", msg.str()});
    } else {
      by_rank[rank].push_back(id);
    }
  }
  for (const auto& [rank, holders] : by_rank) {
    if (holders.size() > 1) {
      std::ostringstream msg;
      msg << what << " rank " << rank << " held by " << holders.size()
          << " nodes: " << join(holders, 4);
      report.violations.push_back({Err::BAD_RANK, holders[1], "", msg.str()});
    }
  }
  for (int rank = 1; rank <= n; ++rank) {
    if (!by_rank.count(rank)) {
      std::ostringstream msg;
      msg << "no " << what << " node carries rank " << rank;
      report.violations.push_back({Err::BAD_RANK, "", "", msg.str()});
    }
  }
}

}  // namespace

// Only this helper may populate a Circuit; every instance in the wild has
// therefore survived full validation.
struct CircuitBuilder {
  static Circuit make(const RawCircuit& raw, std::map<EdgeId, EdgeEnds> edges,
                      std::map<NodeId, std::vector<EdgeId>> node_in,
                      std::map<NodeId, std::vector<EdgeId>> node_out,
                      const std::vector<NodeId>& inputs,
                      const std::vector<NodeId>& outputs,
                      std::vector<NodeId> gates, bool timeline_mode,
                      bool balanced, int depth) {
    Circuit c;
    c.nodes_ = raw.nodes;
    c.edges_ = std::move(edges);
    c.timelines_ = raw.timelines;
    c.gates_ = std::move(gates);
    c.inputs_.resize(inputs.size());
    for (const auto& nid : inputs) c.inputs_[raw.nodes.at(nid).rank - 1] = nid;
    c.outputs_.resize(outputs.size());
    for (const auto& nid : outputs)
      c.outputs_[raw.nodes.at(nid).rank - 1] = nid;
    for (const auto& gid : c.gates_) {
      if (timeline_mode) {
        auto by_timeline = [&](std::vector<EdgeId> list) {
          std::sort(list.begin(), list.end(),
                    [&](const EdgeId& a, const EdgeId& b) {
                      return raw.timelines.at(a) < raw.timelines.at(b);
                    });
          return list;
        };
        c.gate_in_[gid] = by_timeline(node_in[gid]);
        c.gate_out_[gid] = by_timeline(node_out[gid]);
      } else {
        auto it_in = raw.gate_in.find(gid);
        c.gate_in_[gid] =
            it_in != raw.gate_in.end() ? it_in->second : node_in[gid];
        auto it_out = raw.gate_out.find(gid);
        c.gate_out_[gid] =
            it_out != raw.gate_out.end() ? it_out->second : node_out[gid];
      }
    }
    c.node_in_ = std::move(node_in);
    c.node_out_ = std::move(node_out);
    c.balanced_ = balanced;
    c.depth_ = depth;
    return c;
  }
};

BuildResult build_circuit(const RawCircuit& raw) {
  BuildResult result;
  ValidationReport& report = result.report;
  auto flag = [&](Err code, const NodeId& node, const EdgeId& edge,
                  const std::string& message) {
    report.violations.push_back({code, node, edge, message});
  };

  // Referential integrity. Later phases only trust edges with known ends.
  std::map<EdgeId, EdgeEnds> edges;
  for (const auto& [eid, ends] : raw.edges) {
    bool ok = true;
    if (!raw.nodes.count(ends.source)) {
      flag(Err::UNKNOWN_NODE, ends.source, eid,
           "edge source is not a declared node");
      ok = false;
    }
    if (!raw.nodes.count(ends.target)) {
      flag(Err::UNKNOWN_NODE, ends.target, eid,
           "edge target is not a declared node");
      ok = false;
    }
    if (ok) edges[eid] = ends;
  }
  for (const auto* listing : {&raw.gate_in, &raw.gate_out}) {
    for (const auto& [gid, list] : *listing) {
      auto it = raw.nodes.find(gid);
      if (it == raw.nodes.end() || it->second.type != NodeType::Gate)
        flag(Err::UNKNOWN_GATE, gid, "",
             "edge ordering given for a node that is not a declared gate");
      for (const auto& eid : list)
        if (!raw.edges.count(eid))
          flag(Err::UNKNOWN_EDGE, gid, eid,
               "edge ordering names an undeclared edge");
    }
  }
  for (const auto& [eid, t] : raw.timelines) {
    (void)t;
    if (!raw.edges.count(eid))
      flag(Err::UNKNOWN_EDGE, "", eid, "timeline given for an undeclared edge");
  }

  // Incidence. Vectors inherit lexicographic edge order from the map walk.
  std::map<NodeId, std::vector<EdgeId>> node_in, node_out;
  for (const auto& [nid, kind] : raw.nodes) {
    (void)kind;
    node_in[nid];
    node_out[nid];
  }
  for (const auto& [eid, ends] : edges) {
    node_out[ends.source].push_back(eid);
    node_in[ends.target].push_back(eid);
  }

  std::vector<NodeId> inputs, outputs, gates;
  for (const auto& [nid, kind] : raw.nodes) {
    switch (kind.type) {
      case NodeType::Input:
        inputs.push_back(nid);
        break;
      case NodeType::Output:
        outputs.push_back(nid);
        break;
      case NodeType::Gate:
        gates.push_back(nid);
        break;
    }
  }

  check_ranks(raw.nodes, inputs, "input", report);
  check_ranks(raw.nodes, outputs, "output", report);

  // Degrees. An all-around disconnected node gets the specific code.
  for (const auto& [nid, kind] : raw.nodes) {
    const std::size_t indeg = node_in[nid].size();
    const std::size_t outdeg = node_out[nid].size();
    if (indeg == 0 && outdeg == 0) {
      flag(Err::ISOLATED_NODE, nid, "", "node has no incident edges");
      continue;
    }
    switch (kind.type) {
      case NodeType::Input:
        if (indeg != 0)
          flag(Err::BAD_INPUT_DEGREE, nid, "",
               "input node has an incoming edge");
        if (outdeg == 0)
          flag(Err::BAD_INPUT_DEGREE, nid, "",
               "input node has no outgoing edge");
        break;
      case NodeType::Output:
        if (indeg != 1)
          flag(Err::BAD_OUTPUT_DEGREE, nid, "",
               "output node needs exactly one incoming edge, has " +
                   std::to_string(indeg));
        if (outdeg != 0)
          flag(Err::BAD_OUTPUT_DEGREE, nid, "",
               "output node has an outgoing edge");
        break;
      case NodeType::Gate:
        if (indeg == 0)
          flag(Err::BAD_GATE_DEGREE, nid, "", "gate has no incoming edge");
        if (outdeg == 0)
          flag(Err::BAD_GATE_DEGREE, nid, "", "gate has no outgoing edge");
        break;
    }
  }

  // Supplied per-gate orderings must list exactly the incident edges.
  auto check_listing = [&](const std::map<NodeId, std::vector<EdgeId>>& given,
                           std::map<NodeId, std::vector<EdgeId>>& actual,
                           const char* side) {
    for (const auto& [gid, list] : given) {
      auto it = raw.nodes.find(gid);
      if (it == raw.nodes.end() || it->second.type != NodeType::Gate) continue;
      std::vector<EdgeId> sorted = list;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
          sorted != actual[gid]) {
        std::ostringstream msg;
        msg << side << " ordering of gate " << gid
            << " does not list exactly the incident edges";
        flag(Err::EDGE_LIST_MISMATCH, gid, "", msg.str());
      }
    }
  };
  check_listing(raw.gate_in, node_in, "incoming");
  check_listing(raw.gate_out, node_out, "outgoing");

  // Acyclicity by Kahn's algorithm; the same sweep yields the depth (the
  // largest number of gates on any path).
  int depth = 0;
  {
    std::map<NodeId, int> pending;
    std::map<NodeId, int> gate_count;
    std::deque<NodeId> ready;
    for (const auto& [nid, ins] : node_in) {
      pending[nid] = static_cast<int>(ins.size());
      if (ins.empty()) ready.push_back(nid);
    }
    std::size_t processed = 0;
    while (!ready.empty()) {
      const NodeId nid = ready.front();
      ready.pop_front();
      ++processed;
      int count = 0;
      for (const auto& eid : node_in[nid])
        count = std::max(count, gate_count[edges[eid].source]);
      if (raw.nodes.at(nid).type == NodeType::Gate) ++count;
      gate_count[nid] = count;
      depth = std::max(depth, count);
      for (const auto& eid : node_out[nid])
        if (--pending[edges[eid].target] == 0)
          ready.push_back(edges[eid].target);
    }
    if (processed < raw.nodes.size()) {
      std::vector<NodeId> stuck;
      for (const auto& [nid, left] : pending)
        if (left > 0) stuck.push_back(nid);
      flag(Err::CYCLE, stuck.empty() ? "" : stuck.front(), "",
           "cycle through nodes: " + join(stuck, 8));
    }
  }

  // Balance. Checked structurally regardless of mode; the timeline map, when
  // present, additionally has to tie edges to strata consistently.
  const bool timeline_mode = !raw.timelines.empty();
  bool balanced = inputs.size() == outputs.size();
  for (const auto& gid : gates)
    if (node_in[gid].size() != node_out[gid].size()) balanced = false;

  if (timeline_mode) {
    const int width = static_cast<int>(inputs.size());
    if (inputs.size() != outputs.size())
      flag(Err::NOT_BALANCED, "", "",
           "timeline-carrying circuit has " + std::to_string(inputs.size()) +
               " inputs but " + std::to_string(outputs.size()) + " outputs");
    for (const auto& gid : gates)
      if (node_in[gid].size() != node_out[gid].size())
        flag(Err::NOT_BALANCED_GATE, gid, "",
             "gate has " + std::to_string(node_in[gid].size()) +
                 " incoming but " + std::to_string(node_out[gid].size()) +
                 " outgoing edges");

    bool total = true;
    for (const auto& [eid, ends] : edges) {
      (void)ends;
      auto it = raw.timelines.find(eid);
      if (it == raw.timelines.end()) {
        flag(Err::BAD_TIMELINES, "", eid, "edge carries no timeline");
        total = false;
      } else if (it->second < 1 || it->second > width) {
        flag(Err::BAD_TIMELINES, "", eid,
             "timeline " + std::to_string(it->second) + " outside 1.." +
                 std::to_string(width));
        total = false;
      }
    }

    if (total) {
      auto timeline_of = [&](const EdgeId& eid) {
        return raw.timelines.at(eid);
      };
      for (const auto& nid : inputs) {
        const int rank = raw.nodes.at(nid).rank;
        if (node_out[nid].size() != 1) {
          flag(Err::BAD_TIMELINES, nid, "",
               "balanced input node needs exactly one outgoing edge, has " +
                   std::to_string(node_out[nid].size()));
        } else if (timeline_of(node_out[nid][0]) != rank) {
          flag(Err::BAD_TIMELINES, nid, node_out[nid][0],
               "input of rank " + std::to_string(rank) +
                   " feeds an edge on timeline " +
                   std::to_string(timeline_of(node_out[nid][0])));
        }
      }
      for (const auto& nid : outputs) {
        const int rank = raw.nodes.at(nid).rank;
        if (node_in[nid].size() == 1 &&
            timeline_of(node_in[nid][0]) != rank) {
          flag(Err::BAD_TIMELINES, nid, node_in[nid][0],
               "output of rank " + std::to_string(rank) +
                   " is fed by an edge on timeline " +
                   std::to_string(timeline_of(node_in[nid][0])));
        }
      }
      for (const auto& gid : gates) {
        std::vector<int> in_t, out_t;
        for (const auto& eid : node_in[gid]) in_t.push_back(timeline_of(eid));
        for (const auto& eid : node_out[gid]) out_t.push_back(timeline_of(eid));
        std::sort(in_t.begin(), in_t.end());
        std::sort(out_t.begin(), out_t.end());
        const bool dup_in =
            std::adjacent_find(in_t.begin(), in_t.end()) != in_t.end();
        const bool dup_out =
            std::adjacent_find(out_t.begin(), out_t.end()) != out_t.end();
        if (dup_in || dup_out)
          flag(Err::BAD_TIMELINES, gid, "",
               "gate meets some timeline through two edges on one side");
        else if (in_t != out_t)
          flag(Err::BAD_TIMELINES, gid, "",
               "gate enters and leaves different timeline sets");
      }
    }
  }

  if (!report.ok()) return result;

  result.circuit = CircuitBuilder::make(raw, std::move(edges),
                                        std::move(node_in),
                                        std::move(node_out), inputs, outputs,
                                        std::move(gates), timeline_mode,
                                        balanced, depth);
  return result;
}

Circuit build_or_throw(const RawCircuit& raw) {
  BuildResult result = build_circuit(raw);
  if (!result.ok())
    throw Error(result.report.violations.front().code,
                "invalid circuit\n" + result.report.to_string());
  return *std::move(result.circuit);
}

bool Circuit::is_gate(const NodeId& id) const {
  auto it = nodes_.find(id);
  return it != nodes_.end() && it->second.type == NodeType::Gate;
}

const NodeKind& Circuit::kind(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    throw Error(Err::UNKNOWN_NODE, "no node named " + id);
  return it->second;
}

const std::vector<EdgeId>& Circuit::gate_in(const NodeId& gate) const {
  auto it = gate_in_.find(gate);
  if (it == gate_in_.end())
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  return it->second;
}

const std::vector<EdgeId>& Circuit::gate_out(const NodeId& gate) const {
  auto it = gate_out_.find(gate);
  if (it == gate_out_.end())
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  return it->second;
}

const std::vector<EdgeId>& Circuit::in_edges(const NodeId& id) const {
  auto it = node_in_.find(id);
  if (it == node_in_.end())
    throw Error(Err::UNKNOWN_NODE, "no node named " + id);
  return it->second;
}

const std::vector<EdgeId>& Circuit::out_edges(const NodeId& id) const {
  auto it = node_out_.find(id);
  if (it == node_out_.end())
    throw Error(Err::UNKNOWN_NODE, "no node named " + id);
  return it->second;
}

const EdgeEnds& Circuit::ends(const EdgeId& id) const {
  auto it = edges_.find(id);
  if (it == edges_.end())
    throw Error(Err::UNKNOWN_EDGE, "no edge named " + id);
  return it->second;
}

int Circuit::timeline(const EdgeId& id) const {
  if (!has_timelines())
    throw Error(Err::NO_TIMELINES, "circuit carries no timeline map");
  auto it = timelines_.find(id);
  if (it == timelines_.end())
    throw Error(Err::UNKNOWN_EDGE, "no edge named " + id);
  return it->second;
}

bool Circuit::earlier(const NodeId& a, const NodeId& b) const {
  kind(a);
  kind(b);
  if (a == b) return false;
  std::set<NodeId> seen{a};
  std::deque<NodeId> frontier{a};
  while (!frontier.empty()) {
    const NodeId current = frontier.front();
    frontier.pop_front();
    for (const auto& eid : node_out_.at(current)) {
      const NodeId& next = edges_.at(eid).target;
      if (next == b) return true;
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return false;
}

int Circuit::width() const {
  if (!balanced_)
    throw Error(Err::NOT_BALANCED, "width is defined for balanced circuits");
  return static_cast<int>(inputs_.size());
}

int Circuit::gate_arity(const NodeId& gate) const {
  if (!is_gate(gate))
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  const auto& in = node_in_.at(gate);
  const auto& out = node_out_.at(gate);
  if (in.size() != out.size())
    throw Error(Err::NOT_BALANCED_GATE,
                "gate " + gate + " has unequal in/out degree");
  return static_cast<int>(in.size());
}

std::vector<int> Circuit::active_timelines(const NodeId& gate) const {
  if (!is_gate(gate))
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  if (!has_timelines())
    throw Error(Err::NO_TIMELINES, "circuit carries no timeline map");
  std::set<int> active;
  for (const auto& eid : node_in_.at(gate)) active.insert(timelines_.at(eid));
  for (const auto& eid : node_out_.at(gate)) active.insert(timelines_.at(eid));
  return std::vector<int>(active.begin(), active.end());
}

Circuit::Thread Circuit::thread(int timeline) const {
  const int w = width();
  if (!has_timelines())
    throw Error(Err::NO_TIMELINES, "circuit carries no timeline map");
  if (timeline < 1 || timeline > w)
    throw Error(Err::BAD_TIMELINES,
                "timeline " + std::to_string(timeline) + " outside 1.." +
                    std::to_string(w));
  Thread result;
  EdgeId eid = input_edge(timeline);
  for (;;) {
    result.edges.push_back(eid);
    const NodeId& next = edges_.at(eid).target;
    if (nodes_.at(next).type == NodeType::Output) break;
    result.gates.push_back(next);
    const EdgeId* continuation = nullptr;
    for (const auto& out : node_out_.at(next))
      if (timelines_.at(out) == timeline) continuation = &out;
    // Validation guarantees exactly one; guard against impossible states.
    if (continuation == nullptr)
      throw Error(Err::BAD_TIMELINES,
                  "timeline " + std::to_string(timeline) + " dies at " + next);
    eid = *continuation;
  }
  return result;
}

const EdgeId& Circuit::input_edge(int timeline) const {
  const int w = width();
  if (!has_timelines())
    throw Error(Err::NO_TIMELINES, "circuit carries no timeline map");
  if (timeline < 1 || timeline > w)
    throw Error(Err::BAD_TIMELINES,
                "timeline " + std::to_string(timeline) + " outside 1.." +
                    std::to_string(w));
  return node_out_.at(inputs_[timeline - 1]).front();
}

const EdgeId& Circuit::output_edge(int timeline) const {
  const int w = width();
  if (!has_timelines())
    throw Error(Err::NO_TIMELINES, "circuit carries no timeline map");
  if (timeline < 1 || timeline > w)
    throw Error(Err::BAD_TIMELINES,
                "timeline " + std::to_string(timeline) + " outside 1.." +
                    std::to_string(w));
  return node_in_.at(outputs_[timeline - 1]).front();
}

bool Circuit::identical(const Circuit& other) const {
  return nodes_ == other.nodes_ && edges_ == other.edges_ &&
         timelines_ == other.timelines_ && gate_in_ == other.gate_in_ &&
         gate_out_ == other.gate_out_;
}

}  // namespace circuitum
