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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "circuitum/boolean.hpp"
#include "circuitum/circuit.hpp"
#include "circuitum/decompose.hpp"
#include "circuitum/error.hpp"
#include "circuitum/quantum.hpp"
#include "circuitum/text.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace circuitum;

namespace {

Document parsed(const std::string& text) {
  ParseResult r = parse(text);
  REQUIRE_MESSAGE(r.ok(), ("unexpected diagnostics for:\n" + text));
  return *r.doc;
}

const Diagnostic& first_diag(const ParseResult& r) {
  REQUIRE_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  return r.diagnostics.front();
}

void check_diag(const std::string& text, const std::string& code, int line,
                int column) {
  ParseResult r = parse(text);
  const Diagnostic& d = first_diag(r);
  CAPTURE(text);
  CAPTURE(d.message);
  CHECK(d.code == code);
  CHECK(d.line == line);
  CHECK(d.column == column);
}

}  // namespace

TEST_CASE("balanced documents parse to the synthesized circuit") {
  Document doc = parsed(support::syntactic_circ_text());
  CHECK(doc.kind == DocumentKind::Syntactic);
  CHECK(doc.balanced_form());
  CHECK(doc.width == 3);
  REQUIRE(doc.gates.size() == 2);
  CHECK(doc.gates[0].id == "G1");
  CHECK(doc.gates[0].lines == std::vector<int>{1, 2});
  CHECK_FALSE(doc.gates[0].has_payload());

  BuildResult br = doc_to_circuit(doc);
  REQUIRE(br.ok());
  Circuit expected = build_or_throw(support::width3_two_gates());
  CHECK(br.circuit->identical(expected));
}

TEST_CASE("empty width and gate-free documents build") {
  Document none = parsed("kind syntactic\nwidth 0\n");
  BuildResult br = doc_to_circuit(none);
  REQUIRE(br.ok());
  CHECK(br.circuit->width() == 0);

  Document wires_only = parsed("kind syntactic\nwidth 2\n");
  BuildResult br2 = doc_to_circuit(wires_only);
  REQUIRE(br2.ok());
  CHECK(br2.circuit->width() == 2);
  CHECK(br2.circuit->gates().empty());
  CHECK(br2.circuit->thread(1).edges.size() == 1);  // straight wire
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
  std::string text =
      "# header comment\r\n"
      "kind syntactic\r\n"
      "\r\n"
      "width 1   # trailing comment\r\n"
      "gate A lines 1\r\n";
  Document doc = parsed(text);
  CHECK(doc.width == 1);
  REQUIRE(doc.gates.size() == 1);
  CHECK(doc.gates[0].id == "A");
}

TEST_CASE("parse diagnostics carry positions and codes") {
  // Header problems.
  check_diag("", "SYNTAX", 1, 1);
  check_diag("# only a comment\n", "SYNTAX", 1, 1);
  check_diag("kind bogus\nwidth 1\n", "SYNTAX", 1, 6);
  check_diag("kind syntactic\n", "SYNTAX", 1, 1);
  check_diag("kind syntactic\ngate A lines 1\n", "SYNTAX", 2, 1);
  check_diag("kind syntactic\nwidth -1\n", "SYNTAX", 2, 1);
  check_diag("kind syntactic\ninputs a\ngate G\n", "SYNTAX", 3, 1);

  // Gate declarations.
  check_diag("kind syntactic\nwidth 2\ngate G lines 0,1\n", "SYNTAX", 3, 14);
  check_diag("kind syntactic\nwidth 2\ngate G lines 3\n", "SYNTAX", 3, 14);
  check_diag("kind syntactic\nwidth 2\ngate G lines 1,1\n", "SYNTAX", 3, 14);
  check_diag("kind syntactic\nwidth 2\ngate G lines x\n", "SYNTAX", 3, 14);
  check_diag("kind syntactic\nwidth 1\ngate A lines 1\ngate A lines 1\n",
             "DUPLICATE_ID", 4, 6);
  check_diag("kind syntactic\nwidth 1\ngate in1 lines 1\n", "DUPLICATE_ID", 3,
             6);
  check_diag("kind syntactic\ninputs a a\noutputs x\n", "DUPLICATE_ID", 2, 10);
  check_diag("kind syntactic\nwidth 1\ngate A\n", "SYNTAX", 3, 1);

  // Payload placement.
  check_diag("kind boolean\nwidth 1\n  op NOT\n", "SYNTAX", 3, 3);
  check_diag("kind syntactic\nwidth 1\ngate A lines 1\n  op NOT\n", "SYNTAX",
             4, 3);
  check_diag(
      "kind boolean\nwidth 1\ngate A lines 1\n  op NOT\n  table 0->0 1->1\n",
      "SYNTAX", 5, 3);
  check_diag("kind boolean\nwidth 1\ngate A lines 1\n  op FOO\n",
             "UNKNOWN_BUILTIN", 4, 6);
  check_diag("kind boolean\nwidth 1\ngate A lines 1\n  op T\n",
             "UNKNOWN_BUILTIN", 4, 6);  // T is quantum-only
  check_diag(
      "kind boolean\nwidth 1\ngate A lines 1\n  matrix 2\n  1,0 0,0\n  0,0 1,0\n",
      "SYNTAX", 4, 3);

  // Tables.
  check_diag("kind boolean\nwidth 1\ngate A lines 1\n  table 0->1 0->0\n",
             "SYNTAX", 4, 14);
  check_diag("kind boolean\nwidth 1\ngate A lines 1\n  table 0->1\n", "SYNTAX",
             4, 3);
  check_diag("kind boolean\nwidth 1\ngate A lines 1\n  table 0->1 11->0\n",
             "SYNTAX", 4, 14);
  check_diag("kind boolean\nwidth 1\ngate A lines 1\n  table 0>1 1->0\n",
             "SYNTAX", 4, 9);
  check_diag("kind boolean\nwidth 2\ngate A lines 1,2\n  table 0->1 1->0\n",
             "SYNTAX", 4, 3);

  // Matrices.
  check_diag("kind quantum\nwidth 2\ngate A lines 1,2\n  matrix 3\n",
             "BAD_MATRIX_SHAPE", 4, 10);
  check_diag(
      "kind quantum\nwidth 2\ngate A lines 1,2\n  matrix 2\n  1,0 0,0\n  0,0 1,0\n",
      "BAD_MATRIX_SHAPE", 4, 10);
  check_diag("kind quantum\nwidth 1\ngate A lines 1\n  matrix 2\n  1,0\n  0,0 1,0\n",
             "BAD_MATRIX_SHAPE", 5, 3);
  check_diag("kind quantum\nwidth 1\ngate A lines 1\n  matrix 2\n  1,0 0,0\n",
             "BAD_MATRIX_SHAPE", 4, 10);
  check_diag(
      "kind quantum\nwidth 1\ngate A lines 1\n  matrix 2\n  1,0 nope\n  0,0 1,0\n",
      "BAD_MATRIX_SHAPE", 5, 7);

  // Wires.
  check_diag("kind syntactic\nwidth 1\nwire in:a -> out:x\n", "SYNTAX", 3, 1);
  check_diag("kind syntactic\ninputs a\noutputs x\nwire in:a out:x\n", "SYNTAX",
             4, 1);
  check_diag("kind syntactic\ninputs a\noutputs x\nwire out:x -> in:a\n",
             "SYNTAX", 4, 6);
  check_diag("kind syntactic\ninputs a\noutputs x\ngate G\nwire in:a -> G.arg[0]\n",
             "SYNTAX", 5, 14);

  // Stray keywords.
  check_diag("kind syntactic\nwidth 1\nwidth 2\n", "SYNTAX", 3, 1);
  check_diag("kind syntactic\nwidth 1\nfrobnicate\n", "SYNTAX", 3, 1);

  // Diagnostic rendering.
  ParseResult r = parse("kind bogus\nwidth 1\n");
  CHECK(first_diag(r).to_string() ==
        "1:6: SYNTAX: unknown kind 'bogus'");
}

TEST_CASE("general documents demand coherent gate listing order") {
  std::string bad =
      "kind syntactic\n"
      "inputs a\n"
      "outputs x\n"
      "gate F\n"
      "gate G\n"
      "wire in:a -> G.arg[1]\n"
      "wire G.val[1] -> F.arg[1]\n"
      "wire F.val[1] -> out:x\n";
  ParseResult r = parse(bad);
  const Diagnostic& d = first_diag(r);
  CHECK(d.code == "NONCOHERENT_GATE_ORDER");
  CHECK(d.line == 4);

  // Swapping the gate lines fixes it.
  std::string good =
      "kind syntactic\n"
      "inputs a\n"
      "outputs x\n"
      "gate G\n"
      "gate F\n"
      "wire in:a -> G.arg[1]\n"
      "wire G.val[1] -> F.arg[1]\n"
      "wire F.val[1] -> out:x\n";
  CHECK(parse(good).ok());

  // An unbuildable document never reaches the ordering check.
  std::string broken =
      "kind syntactic\n"
      "inputs a\n"
      "outputs x\n"
      "gate F\n"
      "gate G\n"
      "wire G.val[1] -> F.arg[1]\n"
      "wire F.val[1] -> G.arg[1]\n";
  CHECK(parse(broken).ok());  // parses; building reports the cycle
  CHECK_FALSE(doc_to_circuit(*parse(broken).doc).ok());
}

TEST_CASE("general documents build with fanout and named boundaries") {
  Document doc = parsed(support::general_circ_text());
  CHECK_FALSE(doc.balanced_form());
  CHECK(doc.input_names == std::vector<std::string>{"a"});
  CHECK(doc.output_names == std::vector<std::string>{"x", "y"});

  BuildResult br = doc_to_circuit(doc);
  REQUIRE(br.ok());
  const Circuit& c = *br.circuit;
  CHECK(c.inputs() == std::vector<NodeId>{"in:a"});
  CHECK(c.outputs() == std::vector<NodeId>{"out:x", "out:y"});
  CHECK(c.gate_in("G") == std::vector<EdgeId>{"w1", "w2"});
  CHECK(c.gate_out("G") == std::vector<EdgeId>{"w3", "w4"});
  CHECK_FALSE(c.has_timelines());

  // Boolean attachment over the general base: fanout duplicates the bit.
  std::map<NodeId, GateSpec> specs;
  specs.insert({"G", GateSpec{BooleanFunction::builtin("CNOT"), {}, {}}});
  BooleanCircuit bc = attach_boolean(c, specs);
  CHECK(fun(bc, {1}) == std::vector<int>{1, 0});  // (a, a xor a)
  CHECK(fun(bc, {0}) == std::vector<int>{0, 0});
}

TEST_CASE("general argument positions must be dense from one") {
  std::string text =
      "kind syntactic\n"
      "inputs a b\n"
      "outputs x\n"
      "gate G\n"
      "wire in:a -> G.arg[1]\n"
      "wire in:b -> G.arg[3]\n"
      "wire G.val[1] -> out:x\n";
  Document doc = parsed(text);
  BuildResult br = doc_to_circuit(doc);
  CHECK_FALSE(br.ok());
  CHECK(br.report.has(Err::BAD_EDGE_MAP));

  // Duplicate positions are just as bad.
  std::string dup =
      "kind syntactic\n"
      "inputs a b\n"
      "outputs x\n"
      "gate G\n"
      "wire in:a -> G.arg[1]\n"
      "wire in:b -> G.arg[1]\n"
      "wire G.val[1] -> out:x\n";
  BuildResult br2 = doc_to_circuit(parsed(dup));
  CHECK_FALSE(br2.ok());
  CHECK(br2.report.has(Err::BAD_EDGE_MAP));

  // Wires naming undeclared gates or boundaries surface as build violations.
  std::string ghost =
      "kind syntactic\n"
      "inputs a\n"
      "outputs x\n"
      "gate G\n"
      "wire in:a -> H.arg[1]\n"
      "wire G.val[1] -> out:x\n";
  CHECK_FALSE(doc_to_circuit(parsed(ghost)).ok());
}

TEST_CASE("boolean documents evaluate") {
  BooleanCircuit swp = doc_to_boolean(parsed(support::swap_circ_text()));
  CHECK(fun(swp, {1, 0}) == std::vector<int>{0, 1});
  CHECK(fun(swp, {0, 1}) == std::vector<int>{1, 0});

  BooleanCircuit cnot = doc_to_boolean(parsed(support::cnot_circ_text()));
  CHECK(circuit_table(cnot).table() == std::vector<std::uint32_t>{0, 1, 3, 2});

  // Explicit table payload.
  BooleanCircuit nt = doc_to_boolean(
      parsed("kind boolean\nwidth 1\ngate N lines 1\n  table 0->1 1->0\n"));
  CHECK(fun(nt, {0}) == std::vector<int>{1});

  CHECK_THROWS_WITH_AS(
      doc_to_boolean(parsed("kind boolean\nwidth 1\ngate N lines 1\n")),
      doctest::Contains("MISSING_FUNCTION"), Error);
  CHECK_THROWS_WITH_AS(doc_to_boolean(parsed(support::bell_circ_text())),
                       doctest::Contains("KIND_MISMATCH"), Error);
  CHECK_THROWS_WITH_AS(doc_to_boolean(parsed(support::syntactic_circ_text())),
                       doctest::Contains("KIND_MISMATCH"), Error);
}

TEST_CASE("quantum documents simulate") {
  QuantumCircuit bell = doc_to_quantum(parsed(support::bell_circ_text()));
  StateVector fin =
      simulate(bell, StateVector::basis(2, 0), layer_eager(bell.base())).back();
  const double r = 0.7071067811865476;
  CHECK(std::abs(fin.amp(0) - Amplitude{r, 0}) < 1e-12);
  CHECK(std::abs(fin.amp(3) - Amplitude{r, 0}) < 1e-12);
  CHECK(std::abs(fin.amp(1)) < 1e-12);

  // Table payloads lift to permutation matrices.
  QuantumCircuit flip = doc_to_quantum(
      parsed("kind quantum\nwidth 1\ngate F lines 1\n  table 0->1 1->0\n"));
  StateVector one =
      simulate(flip, StateVector::basis(1, 0), layer_eager(flip.base())).back();
  CHECK(one.amp(1) == Amplitude{1, 0});

  // Matrix payloads go through the unitarity check.
  CHECK_THROWS_WITH_AS(
      doc_to_quantum(parsed("kind quantum\nwidth 1\ngate A lines 1\n"
                            "  matrix 2\n  1,0 0.5,0\n  0,0 1,0\n")),
      doctest::Contains("NOT_UNITARY"), Error);
  CHECK_THROWS_WITH_AS(
      doc_to_quantum(parsed("kind quantum\nwidth 1\ngate A lines 1\n"
                            "  table 0->0 1->0\n")),
      doctest::Contains("NOT_A_PERMUTATION"), Error);
  CHECK_THROWS_WITH_AS(doc_to_quantum(parsed(support::swap_circ_text())),
                       doctest::Contains("KIND_MISMATCH"), Error);

  // A unitary matrix payload parses into exact doubles.
  QuantumCircuit had = doc_to_quantum(parsed(
      "kind quantum\nwidth 1\ngate H lines 1\n  matrix 2\n"
      "  0.70710678118654746,0 0.70710678118654746,0\n"
      "  0.70710678118654746,0 -0.70710678118654746,0\n"));
  CHECK(had.op("H").at(0, 0) == UnitaryMatrix::builtin("H").at(0, 0));
  CHECK(had.op("H").at(1, 1) == UnitaryMatrix::builtin("H").at(1, 1));
}

TEST_CASE("serialization is canonical and a parse fixpoint") {
  // The bell fixture is already canonical text.
  Document bell = parsed(support::bell_circ_text());
  CHECK(serialize(bell) == support::bell_circ_text());

  // Lowercase ops and unsorted tables normalize.
  Document messy = parsed(
      "kind boolean\nwidth 2\ngate S lines 1,2\n  op swap\n");
  CHECK(serialize(messy) == support::swap_circ_text());

  Document table_doc = parsed(
      "kind boolean\nwidth 1\ngate N lines 1\n  table 1->0 0->1\n");
  CHECK(serialize(table_doc) ==
        "kind boolean\nwidth 1\ngate N lines 1\n  table 0->1 1->0\n");

  // Gates re-emit in linearization order.
  Document disordered = parsed(
      "kind syntactic\nwidth 2\ngate B lines 2\ngate A lines 1\n");
  CHECK(serialize(disordered) ==
        "kind syntactic\nwidth 2\ngate A lines 1\ngate B lines 2\n");

  // General documents keep their wires.
  Document gen = parsed(support::general_circ_text());
  CHECK(serialize(gen) == support::general_circ_text());

  for (const std::string& text :
       {support::swap_circ_text(), support::bell_circ_text(),
        support::syntactic_circ_text(), support::general_circ_text(),
        support::and_embed_circ_text()}) {
    std::string canon = serialize(parsed(text));
    CHECK(serialize(parsed(canon)) == canon);
  }
}

TEST_CASE("documents from circuits round-trip isomorphically") {
  std::mt19937_64 rng(1919);
  for (int trial = 0; trial < 25; ++trial) {
    int width = 1 + static_cast<int>(rand_below(rng, 4));
    int gates = static_cast<int>(rand_below(rng, 7));
    Circuit c = support::random_balanced(rng, width, gates);
    Document doc = document_from_circuit(c);
    std::string text = serialize(doc);
    ParseResult r = parse(text);
    REQUIRE_MESSAGE(r.ok(), text);
    BuildResult br = doc_to_circuit(*r.doc);
    REQUIRE(br.ok());
    CHECK(isomorphic(c, *br.circuit).has_value());
    CHECK(serialize(*r.doc) == text);  // canonical text is stable
  }

  // General circuit: names without prefixes survive one round trip.
  RawCircuit raw;
  raw.add_input("a", 1);
  raw.add_output("x", 1);
  raw.add_output("y", 2);
  raw.add_gate("G");
  raw.add_edge("e1", "a", "G");
  raw.add_edge("e2", "a", "G");
  raw.add_edge("e3", "G", "x");
  raw.add_edge("e4", "G", "y");
  Circuit g = build_or_throw(raw);
  Document gd = document_from_circuit(g);
  CHECK(gd.input_names == std::vector<std::string>{"a"});
  BuildResult gb = doc_to_circuit(*parse(serialize(gd)).doc);
  REQUIRE(gb.ok());
  CHECK(isomorphic(g, *gb.circuit).has_value());
}

TEST_CASE("boolean round trips preserve the computed table") {
  std::mt19937_64 rng(2020);
  for (int trial = 0; trial < 15; ++trial) {
    int width = 1 + static_cast<int>(rand_below(rng, 4));
    int gates = static_cast<int>(rand_below(rng, 6));
    Circuit c = support::random_balanced(rng, width, gates);
    BooleanCircuit b = support::random_boolean(rng, c, false);
    Document doc = document_from_boolean(b);
    BooleanCircuit back = doc_to_boolean(*parse(serialize(doc)).doc);
    CHECK(circuit_table(back).table() == circuit_table(b).table());
  }
}

TEST_CASE("quantum round trips preserve amplitudes exactly") {
  std::mt19937_64 rng(2121);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c = support::random_balanced(rng, 3, 5);
    QuantumCircuit qc = support::random_quantum(rng, c);
    Document doc = document_from_quantum(qc);
    QuantumCircuit back = doc_to_quantum(*parse(serialize(doc)).doc);
    StateVector input =
        StateVector::basis(3, static_cast<std::uint32_t>(rand_below(rng, 8)));
    StateVector a = simulate(qc, input, layer_eager(c)).back();
    StateVector b = simulate(back, input, layer_eager(back.base())).back();
    for (std::uint32_t i = 0; i < a.dim(); ++i) CHECK(a.amp(i) == b.amp(i));
  }
}

TEST_CASE("document_from_boolean keeps explicit argument orders") {
  RawCircuit raw;
  raw.add_input("a", 1);
  raw.add_input("b", 2);
  raw.add_output("x", 1);
  raw.add_gate("G");
  raw.add_edge("e_hi", "a", "G");
  raw.add_edge("e_lo", "b", "G");
  raw.add_edge("e_out", "G", "x");
  Circuit c = build_or_throw(raw);
  BooleanFunction impl = BooleanFunction::from_table(2, 1, {0, 1, 0, 0});
  std::map<NodeId, GateSpec> specs;
  specs.insert({"G", GateSpec{impl, {"e_lo", "e_hi"}, {"e_out"}}});
  BooleanCircuit bc = attach_boolean(c, specs);

  BooleanCircuit back = doc_to_boolean(*parse(serialize(document_from_boolean(bc))).doc);
  for (std::uint32_t x = 0; x < 4; ++x) {
    std::vector<int> word = bits_from_index(x, 2);
    CHECK(fun(back, word) == fun(bc, word));
  }
}
