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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circuitum/boolean.hpp"
#include "circuitum/circuit.hpp"
#include "circuitum/quantum.hpp"

namespace circuitum {

/// Line-oriented ".circ" format. Balanced documents declare a width and
/// thread each timeline through its gates in listing order; general
/// documents name inputs/outputs and wire endpoints explicitly. Comments
/// run from '#' to end of line; blank lines are skipped; newline is LF.
enum class DocumentKind { Syntactic, Boolean, Quantum };

struct TableEntry {
  std::vector<int> in;
  std::vector<int> out;
};

struct GateDecl {
  std::string id;
  std::vector<int> lines;  // active timelines; balanced documents only
  // At most one payload: a builtin name, a truth table, or a matrix.
  std::string op;
  std::vector<TableEntry> table;
  int matrix_dim = 0;
  std::vector<Amplitude> matrix;  // row-major, matrix_dim^2 entries
  int decl_line = 0;

  bool has_payload() const {
    return !op.empty() || !table.empty() || matrix_dim > 0;
  }
};

struct WireEndpoint {
  enum class Kind { Input, Output, Arg, Val };
  Kind kind = Kind::Input;
  std::string name;  // input/output name or gate id
  int pos = 0;       // 1-based argument/value position
};

struct WireDecl {
  WireEndpoint src;
  WireEndpoint dst;
  int decl_line = 0;
};

struct Document {
  DocumentKind kind = DocumentKind::Syntactic;
  int width = -1;  // >= 0 exactly for balanced documents
  std::vector<std::string> input_names;   // general documents
  std::vector<std::string> output_names;  // general documents
  std::vector<GateDecl> gates;
  std::vector<WireDecl> wires;

  bool balanced_form() const { return width >= 0; }
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string code;  // SYNTAX, DUPLICATE_ID, UNKNOWN_BUILTIN,
                     // BAD_MATRIX_SHAPE, NONCOHERENT_GATE_ORDER
  std::string message;

  std::string to_string() const;
};

struct ParseResult {
  std::optional<Document> doc;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return doc.has_value(); }
};

/// Structural parse; every failure yields positioned diagnostics. Semantic
/// circuit validity is deferred to doc_to_circuit and the attach functions,
/// except that a buildable general document must list its gates in a
/// coherent order.
ParseResult parse(std::string_view text);

/// Canonical text: gates in the deterministic linearization order (listing
/// order when the document does not build), tables sorted by input word,
/// matrices row-major with 17 significant digits.
std::string serialize(const Document& doc);

/// The syntactic circuit of any document. Balanced documents synthesize
/// node ids in1..inW/out1..outW and edge ids t<T>e<K>; general documents
/// use in:<name>/out:<name> node ids and w<N> edge ids in wire order.
BuildResult doc_to_circuit(const Document& doc);

/// Boolean and quantum views; the document kind must match and every gate
/// needs its payload.
BooleanCircuit doc_to_boolean(const Document& doc);
QuantumCircuit doc_to_quantum(const Document& doc);

/// Documents from semantic objects. Payloads are emitted in canonical form:
/// explicit tables for Boolean gates, explicit matrices for quantum gates.
Document document_from_circuit(const Circuit& c);
Document document_from_boolean(const BooleanCircuit& b);
Document document_from_quantum(const QuantumCircuit& qc);

}  // namespace circuitum
