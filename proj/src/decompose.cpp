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

#include "circuitum/decompose.hpp"

#include <algorithm>

#include "circuitum/random.hpp"

namespace circuitum {

namespace {

// Direct gate-to-gate edges. Any path between gates only crosses gates
// (inputs have no incoming, outputs no outgoing edges), so reachability over
// this graph coincides with "earlier" restricted to gates.
std::map<NodeId, std::set<NodeId>> gate_adjacency(const Circuit& c) {
  std::map<NodeId, std::set<NodeId>> adj;
  for (const auto& gid : c.gates()) adj[gid];
  for (const auto& [eid, ends] : c.edges()) {
    (void)eid;
    if (c.is_gate(ends.source) && c.is_gate(ends.target))
      adj[ends.source].insert(ends.target);
  }
  return adj;
}

std::map<NodeId, std::set<NodeId>> reverse_adjacency(
    const std::map<NodeId, std::set<NodeId>>& adj) {
  std::map<NodeId, std::set<NodeId>> rev;
  for (const auto& [g, succs] : adj) {
    rev[g];
    for (const auto& s : succs) rev[s].insert(g);
  }
  return rev;
}

// descendants[g] = every gate strictly after g.
std::map<NodeId, std::set<NodeId>> gate_reach(const Circuit& c) {
  const auto adj = gate_adjacency(c);
  const Linearization order = linearize(c);
  std::map<NodeId, std::set<NodeId>> reach;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& out = reach[*it];
    for (const auto& s : adj.at(*it)) {
      out.insert(s);
      const auto& tail = reach.at(s);
      out.insert(tail.begin(), tail.end());
    }
  }
  return reach;
}

void require_gates(const Circuit& c, const GateSet& x) {
  for (const auto& g : x)
    if (!c.is_gate(g))
      throw Error(Err::UNKNOWN_GATE, g + " is not a gate of the circuit");
}

}  // namespace

Poset gate_poset(const Circuit& c) {
  std::set<std::string> elements(c.gates().begin(), c.gates().end());
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [g, succs] : gate_adjacency(c))
    for (const auto& s : succs) pairs.insert({g, s});
  return Poset(std::move(elements), std::move(pairs), /*close=*/true);
}

bool is_convex(const Circuit& c, const GateSet& x) {
  require_gates(c, x);
  const auto reach = gate_reach(c);
  for (const auto& mid : c.gates()) {
    if (x.count(mid)) continue;
    bool after_some_member = false;
    for (const auto& a : x)
      if (reach.at(a).count(mid)) {
        after_some_member = true;
        break;
      }
    if (!after_some_member) continue;
    for (const auto& b : x)
      if (reach.at(mid).count(b)) return false;
  }
  return true;
}

bool is_antichain(const Circuit& c, const GateSet& x) {
  require_gates(c, x);
  const auto reach = gate_reach(c);
  for (const auto& a : x)
    for (const auto& b : x)
      if (a != b && reach.at(a).count(b)) return false;
  return true;
}

Circuit slice(const Circuit& c, const GateSet& x) {
  require_gates(c, x);
  if (!c.is_balanced())
    throw Error(Err::NOT_BALANCED, "slices need a balanced circuit");
  if (!c.has_timelines())
    throw Error(Err::NO_TIMELINES, "slices need a timeline map");
  if (!is_convex(c, x))
    throw Error(Err::NOT_CONVEX, "gate set is not convex");

  const int w = c.width();
  RawCircuit raw;
  for (const auto& nid : c.inputs()) raw.add_input(nid, c.kind(nid).rank);
  for (const auto& nid : c.outputs()) raw.add_output(nid, c.kind(nid).rank);
  for (const auto& g : x) raw.add_gate(g);

  for (int t = 1; t <= w; ++t) {
    const Circuit::Thread th = c.thread(t);
    // Convexity makes the members contiguous along the thread.
    int first = -1, last = -1;
    for (std::size_t i = 0; i < th.gates.size(); ++i) {
      if (!x.count(th.gates[i])) continue;
      if (first < 0) first = static_cast<int>(i);
      last = static_cast<int>(i);
    }
    const NodeId& in = c.inputs()[t - 1];
    const NodeId& out = c.outputs()[t - 1];
    if (first < 0) {
      // No member on this timeline: the original input edge runs through.
      raw.add_edge(th.edges[0], in, out, t);
      continue;
    }
    for (int j = first; j <= last + 1; ++j) {
      const NodeId& src = (j == first) ? in : th.gates[j - 1];
      const NodeId& dst = (j == last + 1) ? out : th.gates[j];
      raw.add_edge(th.edges[j], src, dst, t);
    }
  }
  return build_or_throw(raw);
}

PartitionCheck is_coherent_partition(const Circuit& c,
                                     const std::vector<GateSet>& blocks) {
  std::map<NodeId, std::size_t> block_of;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty())
      return {false, "block " + std::to_string(i + 1) + " is empty"};
    for (const auto& g : blocks[i]) {
      if (!c.is_gate(g))
        return {false, g + " is not a gate of the circuit"};
      if (block_of.count(g))
        return {false, g + " appears in more than one block"};
      block_of[g] = i;
    }
  }
  if (block_of.size() != c.gates().size()) {
    for (const auto& g : c.gates())
      if (!block_of.count(g)) return {false, "gate " + g + " is unscheduled"};
  }
  const auto reach = gate_reach(c);
  for (const auto& [g, succs] : reach)
    for (const auto& h : succs)
      if (block_of.at(g) > block_of.at(h))
        return {false,
                g + " is earlier than " + h + " but scheduled after it"};
  return {true, ""};
}

namespace {

// Ids are tagged with their part index until the final naming pass.
struct Tagged {
  int part = 0;
  std::string id;

  auto operator<=>(const Tagged&) const = default;
};

}  // namespace

ComposeResult compose_with_maps(const std::vector<Circuit>& parts) {
  if (parts.empty())
    throw Error(Err::EMPTY_SEQUENCE, "composition needs at least one part");
  for (const auto& p : parts) {
    if (!p.is_balanced())
      throw Error(Err::NOT_BALANCED, "composition needs balanced parts");
    if (!p.has_timelines())
      throw Error(Err::NO_TIMELINES, "composition needs timeline maps");
  }
  const int w = parts[0].width();
  for (const auto& p : parts)
    if (p.width() != w)
      throw Error(Err::WIDTH_MISMATCH,
                  "parts of width " + std::to_string(w) + " and " +
                      std::to_string(p.width()) + " cannot compose");

  if (parts.size() == 1) {
    ComposeResult single{parts[0], {{}}};
    for (const auto& [nid, kind] : parts[0].nodes()) {
      (void)kind;
      single.node_maps[0][nid] = nid;
    }
    return single;
  }

  std::map<Tagged, NodeKind> nodes;
  struct TaggedEdge {
    Tagged source, target;
    int timeline;
  };
  std::map<Tagged, TaggedEdge> edges;

  for (const auto& [nid, kind] : parts[0].nodes()) nodes[{0, nid}] = kind;
  for (const auto& [eid, ends] : parts[0].edges())
    edges[{0, eid}] = {{0, ends.source}, {0, ends.target},
                       parts[0].timeline(eid)};

  // The open seam: the node and the edge currently feeding each stratum's
  // output. Fusing keeps the left edge's id and adopts the right target.
  std::vector<Tagged> seam_node(w), seam_edge(w);
  for (int t = 1; t <= w; ++t) {
    seam_node[t - 1] = {0, parts[0].outputs()[t - 1]};
    seam_edge[t - 1] = {0, parts[0].output_edge(t)};
  }

  for (int i = 1; i < static_cast<int>(parts.size()); ++i) {
    const Circuit& p = parts[i];
    std::set<EdgeId> fused;
    for (int t = 1; t <= w; ++t) fused.insert(p.input_edge(t));
    for (const auto& [nid, kind] : p.nodes())
      if (kind.type != NodeType::Input) nodes[{i, nid}] = kind;
    for (const auto& [eid, ends] : p.edges())
      if (!fused.count(eid))
        edges[{i, eid}] = {{i, ends.source}, {i, ends.target},
                           p.timeline(eid)};
    for (int t = 1; t <= w; ++t) {
      const EdgeId& ie = p.input_edge(t);
      const NodeId& landing = p.ends(ie).target;
      nodes.erase(seam_node[t - 1]);
      edges.at(seam_edge[t - 1]).target = {i, landing};
      seam_node[t - 1] = {i, p.outputs()[t - 1]};
      if (p.kind(landing).type != NodeType::Output)
        seam_edge[t - 1] = {i, p.output_edge(t)};
      // Otherwise the stratum is a bare wire of p and the fused edge now
      // reaches p's output directly; the seam edge id stays.
    }
  }

  // Prefer the original ids; fall back to part-prefixed ids as soon as any
  // id occurs in two parts.
  bool collide = false;
  {
    std::map<std::string, int> node_seen, edge_seen;
    for (const auto& [tid, kind] : nodes) {
      (void)kind;
      if (++node_seen[tid.id] > 1) collide = true;
    }
    for (const auto& [tid, edge] : edges) {
      (void)edge;
      if (++edge_seen[tid.id] > 1) collide = true;
    }
  }
  auto name = [collide](const Tagged& tid) {
    return collide ? "p" + std::to_string(tid.part + 1) + "." + tid.id
                   : tid.id;
  };

  RawCircuit raw;
  for (const auto& [tid, kind] : nodes) raw.nodes[name(tid)] = kind;
  for (const auto& [tid, edge] : edges)
    raw.add_edge(name(tid), name(edge.source), name(edge.target),
                 edge.timeline);

  ComposeResult result{build_or_throw(raw), {}};
  result.node_maps.assign(parts.size(), {});
  for (const auto& [tid, kind] : nodes) {
    (void)kind;
    result.node_maps[tid.part][tid.id] = name(tid);
  }
  return result;
}

Circuit compose(const std::vector<Circuit>& parts) {
  return compose_with_maps(parts).circuit;
}

std::vector<Circuit> decompose(const Circuit& c, const CoherentPartition& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!is_convex(c, p[i]))
      throw Error(Err::NOT_CONVEX_BLOCK,
                  "block " + std::to_string(i + 1) + " is not convex");
  const PartitionCheck check = is_coherent_partition(c, p);
  if (!check) throw Error(Err::NOT_COHERENT, check.reason);
  std::vector<Circuit> factors;
  factors.reserve(p.size());
  for (const auto& block : p) factors.push_back(slice(c, block));
  return factors;
}

CoherentPartition layer_eager(const Circuit& c) {
  const auto adj = gate_adjacency(c);
  const auto pred = reverse_adjacency(adj);
  const Linearization order = linearize(c);
  std::map<NodeId, int> level;
  int depth = 0;
  for (const auto& g : order) {
    int l = 1;
    for (const auto& q : pred.at(g)) l = std::max(l, level.at(q) + 1);
    level[g] = l;
    depth = std::max(depth, l);
  }
  CoherentPartition blocks(depth);
  for (const auto& g : c.gates()) blocks[level.at(g) - 1].insert(g);
  return blocks;
}

CoherentPartition layer_lazy(const Circuit& c) {
  const auto adj = gate_adjacency(c);
  const Linearization order = linearize(c);
  std::map<NodeId, int> tail;  // longest gate chain starting here
  int depth = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int l = 1;
    for (const auto& s : adj.at(*it)) l = std::max(l, tail.at(s) + 1);
    tail[*it] = l;
    depth = std::max(depth, l);
  }
  CoherentPartition blocks(depth);
  for (const auto& g : c.gates()) blocks[depth - tail.at(g)].insert(g);
  return blocks;
}

Linearization linearize(const Circuit& c) {
  const auto adj = gate_adjacency(c);
  std::map<NodeId, int> pending;
  for (const auto& [g, succs] : adj) {
    pending[g];
    for (const auto& s : succs) ++pending[s];
  }
  std::set<NodeId> ready;
  for (const auto& [g, n] : pending)
    if (n == 0) ready.insert(g);
  Linearization out;
  while (!ready.empty()) {
    const NodeId g = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(g);
    for (const auto& s : adj.at(g))
      if (--pending.at(s) == 0) ready.insert(s);
  }
  return out;
}

std::vector<Linearization> all_linearizations(const Circuit& c,
                                              std::size_t cap) {
  return all_extensions(gate_poset(c), cap);
}

namespace {

// Gates of `remaining` with no predecessor inside `remaining`. The callers
// keep `remaining` upward closed, so direct predecessors suffice.
std::vector<NodeId> minimal_gates(
    const std::map<NodeId, std::set<NodeId>>& pred,
    const std::set<NodeId>& remaining) {
  std::vector<NodeId> minimals;
  for (const auto& g : remaining) {
    bool minimal = true;
    for (const auto& q : pred.at(g))
      if (remaining.count(q)) {
        minimal = false;
        break;
      }
    if (minimal) minimals.push_back(g);
  }
  return minimals;
}

bool enum_antichain_partitions(const std::map<NodeId, std::set<NodeId>>& pred,
                               std::set<NodeId>& remaining,
                               CoherentPartition& prefix, std::size_t cap,
                               std::vector<CoherentPartition>& out) {
  if (remaining.empty()) {
    if (out.size() == cap) return false;
    out.push_back(prefix);
    return true;
  }
  const std::vector<NodeId> minimals = minimal_gates(pred, remaining);
  if (minimals.size() > 62)
    throw Error(Err::TOO_MANY, "too many minimal gates to enumerate");
  const std::uint64_t masks = std::uint64_t{1} << minimals.size();
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    GateSet block;
    for (std::size_t i = 0; i < minimals.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) block.insert(minimals[i]);
    for (const auto& g : block) remaining.erase(g);
    prefix.push_back(block);
    const bool keep_going =
        enum_antichain_partitions(pred, remaining, prefix, cap, out);
    prefix.pop_back();
    remaining.insert(block.begin(), block.end());
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

std::vector<CoherentPartition> all_antichain_partitions(const Circuit& c,
                                                        std::size_t cap,
                                                        bool* truncated) {
  const auto pred = reverse_adjacency(gate_adjacency(c));
  std::set<NodeId> remaining(c.gates().begin(), c.gates().end());
  CoherentPartition prefix;
  std::vector<CoherentPartition> out;
  const bool complete =
      enum_antichain_partitions(pred, remaining, prefix, cap, out);
  if (truncated) *truncated = !complete;
  return out;
}

CoherentPartition random_antichain_partition(const Circuit& c,
                                             std::mt19937_64& rng) {
  const auto pred = reverse_adjacency(gate_adjacency(c));
  std::set<NodeId> remaining(c.gates().begin(), c.gates().end());
  CoherentPartition blocks;
  while (!remaining.empty()) {
    const std::vector<NodeId> minimals = minimal_gates(pred, remaining);
    GateSet block;
    while (block.empty())
      for (const auto& g : minimals)
        if (rand_bit(rng)) block.insert(g);
    for (const auto& g : block) remaining.erase(g);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Linearization random_linearization(const Circuit& c, std::mt19937_64& rng) {
  const auto adj = gate_adjacency(c);
  std::map<NodeId, int> pending;
  for (const auto& [g, succs] : adj) {
    pending[g];
    for (const auto& s : succs) ++pending[s];
  }
  std::vector<NodeId> ready;
  for (const auto& [g, n] : pending)
    if (n == 0) ready.push_back(g);
  Linearization out;
  while (!ready.empty()) {
    const std::size_t pick = rand_below(rng, ready.size());
    const NodeId g = ready[pick];
    ready.erase(ready.begin() + pick);
    out.push_back(g);
    for (const auto& s : adj.at(g))
      if (--pending.at(s) == 0)
        ready.insert(std::lower_bound(ready.begin(), ready.end(), s), s);
  }
  return out;
}

CoherentPartition random_coherent_partition(const Circuit& c,
                                            std::mt19937_64& rng) {
  const Linearization order = random_linearization(c, rng);
  CoherentPartition blocks;
  for (const auto& g : order) {
    if (blocks.empty() || rand_bit(rng)) blocks.emplace_back();
    blocks.back().insert(g);
  }
  return blocks;
}

namespace {

struct IsoSearch {
  const Circuit& a;
  const Circuit& b;
  std::map<NodeId, NodeId> node_map;  // a node -> b node
  std::set<NodeId> used_b;

  // Local profile comparison for a candidate gate pair, including edge
  // order, boundary ranks and timelines; gate neighbours are only compared
  // when both sides are already assigned.
  bool compatible(const NodeId& ga, const NodeId& gb) const {
    const bool timelines = a.has_timelines();
    auto sides_match = [&](const std::vector<EdgeId>& ea,
                           const std::vector<EdgeId>& eb, bool incoming) {
      if (ea.size() != eb.size()) return false;
      for (std::size_t k = 0; k < ea.size(); ++k) {
        if (timelines && a.timeline(ea[k]) != b.timeline(eb[k])) return false;
        const NodeId& na =
            incoming ? a.ends(ea[k]).source : a.ends(ea[k]).target;
        const NodeId& nb =
            incoming ? b.ends(eb[k]).source : b.ends(eb[k]).target;
        const NodeKind& ka = a.kind(na);
        const NodeKind& kb = b.kind(nb);
        if (ka.type != kb.type) return false;
        if (ka.type != NodeType::Gate && ka.rank != kb.rank) return false;
        if (ka.type == NodeType::Gate) {
          auto it = node_map.find(na);
          if (it != node_map.end() && it->second != nb) return false;
          if (it == node_map.end() && used_b.count(nb)) return false;
        }
      }
      return true;
    };
    return sides_match(a.gate_in(ga), b.gate_in(gb), true) &&
           sides_match(a.gate_out(ga), b.gate_out(gb), false);
  }

  std::optional<IsoWitness> search(std::size_t idx) {
    if (idx == a.gates().size()) return finish();
    const NodeId& ga = a.gates()[idx];
    for (const auto& gb : b.gates()) {
      if (used_b.count(gb)) continue;
      if (!compatible(ga, gb)) continue;
      node_map[ga] = gb;
      used_b.insert(gb);
      if (auto witness = search(idx + 1)) return witness;
      node_map.erase(ga);
      used_b.erase(gb);
    }
    return std::nullopt;
  }

  // The node bijection forces the edge bijection through the ordered edge
  // lists; this builds it and verifies the whole structure.
  std::optional<IsoWitness> finish() const {
    std::map<EdgeId, EdgeId> edge_map;
    auto assign = [&](const EdgeId& ea, const EdgeId& eb) {
      auto [it, fresh] = edge_map.emplace(ea, eb);
      return fresh || it->second == eb;
    };
    for (const auto& ga : a.gates()) {
      const NodeId& gb = node_map.at(ga);
      const auto& in_a = a.gate_in(ga);
      const auto& in_b = b.gate_in(gb);
      const auto& out_a = a.gate_out(ga);
      const auto& out_b = b.gate_out(gb);
      if (in_a.size() != in_b.size() || out_a.size() != out_b.size())
        return std::nullopt;
      for (std::size_t k = 0; k < in_a.size(); ++k)
        if (!assign(in_a[k], in_b[k])) return std::nullopt;
      for (std::size_t k = 0; k < out_a.size(); ++k)
        if (!assign(out_a[k], out_b[k])) return std::nullopt;
    }
    for (std::size_t i = 0; i < a.outputs().size(); ++i)
      if (!assign(a.in_edges(a.outputs()[i])[0],
                  b.in_edges(b.outputs()[i])[0]))
        return std::nullopt;
    if (edge_map.size() != a.edges().size()) return std::nullopt;
    std::set<EdgeId> images;
    for (const auto& [ea, eb] : edge_map) {
      (void)ea;
      images.insert(eb);
    }
    if (images.size() != b.edges().size()) return std::nullopt;
    for (const auto& [ea, eb] : edge_map) {
      if (node_map.at(a.ends(ea).source) != b.ends(eb).source ||
          node_map.at(a.ends(ea).target) != b.ends(eb).target)
        return std::nullopt;
      if (a.has_timelines() && a.timeline(ea) != b.timeline(eb))
        return std::nullopt;
    }
    return IsoWitness{node_map, edge_map};
  }
};

}  // namespace

std::optional<IsoWitness> isomorphic(const Circuit& a, const Circuit& b) {
  if (a.inputs().size() != b.inputs().size() ||
      a.outputs().size() != b.outputs().size() ||
      a.gates().size() != b.gates().size() ||
      a.edges().size() != b.edges().size() ||
      a.has_timelines() != b.has_timelines() || a.depth() != b.depth())
    return std::nullopt;
  IsoSearch search{a, b, {}, {}};
  for (std::size_t i = 0; i < a.inputs().size(); ++i)
    search.node_map[a.inputs()[i]] = b.inputs()[i];
  for (std::size_t i = 0; i < a.outputs().size(); ++i)
    search.node_map[a.outputs()[i]] = b.outputs()[i];
  return search.search(0);
}

}  // namespace circuitum
