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

#include <string>
#include <utility>
#include <vector>

#include "circuitum/boolean.hpp"
#include "circuitum/circuit.hpp"
#include "circuitum/quantum.hpp"

namespace support {

using circuitum::Circuit;
using circuitum::NodeId;
using circuitum::RawCircuit;

// Balanced circuit from a gate listing: timeline t threads through the gates
// that declare t, in listing order. Node ids in<r>/out<r>, edge ids t<T>e<K>.
inline RawCircuit make_balanced(
    int width, const std::vector<std::pair<NodeId, std::vector<int>>>& gates) {
  RawCircuit raw;
  for (int r = 1; r <= width; ++r) {
    raw.add_input("in" + std::to_string(r), r);
    raw.add_output("out" + std::to_string(r), r);
  }
  for (const auto& [id, lines] : gates) {
    (void)lines;
    raw.add_gate(id);
  }
  for (int t = 1; t <= width; ++t) {
    std::string ts = std::to_string(t);
    std::string prev = "in" + ts;
    int k = 0;
    for (const auto& [id, lines] : gates) {
      bool active = false;
      for (int l : lines) active = active || l == t;
      if (!active) continue;
      raw.add_edge("t" + ts + "e" + std::to_string(k), prev, id, t);
      prev = id;
      ++k;
    }
    raw.add_edge("t" + ts + "e" + std::to_string(k), prev, "out" + ts, t);
  }
  return raw;
}

// Width 3, G1 on lines 1,2 and G2 on lines 1,3; depth 2.
inline RawCircuit width3_two_gates() {
  return make_balanced(3, {{"G1", {1, 2}}, {"G2", {1, 3}}});
}

// Width 1 chain A -> B -> C; depth 3.
inline RawCircuit chain3() {
  return make_balanced(1, {{"A", {1}}, {"B", {1}}, {"C", {1}}});
}

// Width 2 diamond: G1 spans both lines, G2/G3 run in parallel, G4 rejoins.
// Depth 3; eager layers {G1},{G2,G3},{G4}.
inline RawCircuit diamond() {
  return make_balanced(
      2, {{"G1", {1, 2}}, {"G2", {1}}, {"G3", {2}}, {"G4", {1, 2}}});
}

// Width 2: chain A -> B -> C on line 1 plus independent D on line 2. Eager
// fires D with A; lazy defers D to the final block.
inline RawCircuit lazy_distinguisher() {
  return make_balanced(2, {{"A", {1}}, {"B", {1}}, {"C", {1}}, {"D", {2}}});
}

// ---------------------------------------------------------------------------
// .circ fixture texts
// ---------------------------------------------------------------------------

inline std::string swap_circ_text() {
  return "kind boolean\n"
         "width 2\n"
         "gate S lines 1,2\n"
         "  op SWAP\n";
}

inline std::string cnot_circ_text() {
  return "kind boolean\n"
         "width 2\n"
         "gate C lines 1,2\n"
         "  op CNOT\n";
}

inline std::string and_embed_circ_text() {
  return "kind boolean\n"
         "width 2\n"
         "gate A lines 1,2\n"
         "  op AND-EMBED\n";
}

inline std::string bell_circ_text() {
  return "kind quantum\n"
         "width 2\n"
         "gate H1 lines 1\n"
         "  op H\n"
         "gate C1 lines 1,2\n"
         "  op CNOT\n";
}

inline std::string syntactic_circ_text() {
  return "kind syntactic\n"
         "width 3\n"
         "gate G1 lines 1,2\n"
         "gate G2 lines 1,3\n";
}

// General form with input fanout: one input feeds both gate arguments.
inline std::string general_circ_text() {
  return "kind syntactic\n"
         "inputs a\n"
         "outputs x y\n"
         "gate G\n"
         "wire in:a -> G.arg[1]\n"
         "wire in:a -> G.arg[2]\n"
         "wire G.val[1] -> out:x\n"
         "wire G.val[2] -> out:y\n";
}

inline std::string poset_file_text() {
  return "# a < b < d, a < c < d\n"
         "elements a b c d\n"
         "less a b\n"
         "less a c\n"
         "less b d\n"
         "less c d\n";
}

}  // namespace support
