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

#include "circuitum/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "circuitum/decompose.hpp"
#include "circuitum/error.hpp"

namespace circuitum {

std::string Diagnostic::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + code +
         ": " + message;
}

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct SourceLine {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<SourceLine> tokenize(std::string_view text) {
  std::vector<SourceLine> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    SourceLine sl;
    sl.number = number;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
        ++j;
      sl.tokens.push_back(
          {std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
      i = j;
    }
    if (!sl.tokens.empty()) out.push_back(std::move(sl));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

bool parse_uint(const std::string& s, long long* out) {
  if (s.empty() || s.size() > 18) return false;
  long long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  *out = v;
  return true;
}

bool parse_real(const std::string& s, double* out) {
  if (s.empty()) return false;
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size() || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

bool parse_bits(const std::string& s, std::vector<int>* out) {
  if (s.empty()) return false;
  out->clear();
  for (char c : s) {
    if (c != '0' && c != '1') return false;
    out->push_back(c - '0');
  }
  return true;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s.push_back(b ? '1' : '0');
  return s;
}

const std::set<std::string>& boolean_builtins() {
  static const std::set<std::string> names = {"NOT",     "X",       "ID",
                                              "CNOT",    "SWAP",    "TOFFOLI",
                                              "FREDKIN", "AND-EMBED", "XOR-EMBED"};
  return names;
}

const std::set<std::string>& quantum_builtins() {
  static const std::set<std::string> names = {"H",    "T",       "X",      "CNOT",
                                              "SWAP", "TOFFOLI", "FREDKIN"};
  return names;
}

const char* kind_name(DocumentKind k) {
  switch (k) {
    case DocumentKind::Syntactic: return "syntactic";
    case DocumentKind::Boolean: return "boolean";
    case DocumentKind::Quantum: return "quantum";
  }
  return "syntactic";
}

bool parse_endpoint(const std::string& s, WireEndpoint* ep) {
  if (s.size() > 3 && s.compare(0, 3, "in:") == 0) {
    ep->kind = WireEndpoint::Kind::Input;
    ep->name = s.substr(3);
    ep->pos = 0;
    return true;
  }
  if (s.size() > 4 && s.compare(0, 4, "out:") == 0) {
    ep->kind = WireEndpoint::Kind::Output;
    ep->name = s.substr(4);
    ep->pos = 0;
    return true;
  }
  for (const char* key : {".arg[", ".val["}) {
    std::size_t p = s.rfind(key);
    if (p == std::string::npos || p == 0) continue;
    if (s.back() != ']') continue;
    std::size_t tail = p + 5;
    if (tail >= s.size() - 1 + 1 && s.size() - 1 < tail) continue;
    std::string num = s.substr(tail, s.size() - tail - 1);
    long long v = 0;
    if (!parse_uint(num, &v) || v < 1 || v > 1000000) continue;
    ep->kind = key[1] == 'a' ? WireEndpoint::Kind::Arg : WireEndpoint::Kind::Val;
    ep->name = s.substr(0, p);
    ep->pos = static_cast<int>(v);
    return true;
  }
  return false;
}

std::string endpoint_text(const WireEndpoint& ep) {
  switch (ep.kind) {
    case WireEndpoint::Kind::Input: return "in:" + ep.name;
    case WireEndpoint::Kind::Output: return "out:" + ep.name;
    case WireEndpoint::Kind::Arg:
      return ep.name + ".arg[" + std::to_string(ep.pos) + "]";
    case WireEndpoint::Kind::Val:
      return ep.name + ".val[" + std::to_string(ep.pos) + "]";
  }
  return ep.name;
}

struct Parser {
  const std::vector<SourceLine>& lines;
  std::vector<Diagnostic> diags;
  Document doc;
  bool width_ok = false;

  explicit Parser(const std::vector<SourceLine>& l) : lines(l) {}

  void err(int line, int column, const char* code, std::string message) {
    Diagnostic d;
    d.line = line;
    d.column = column;
    d.code = code;
    d.message = std::move(message);
    diags.push_back(std::move(d));
  }

  ParseResult finish() {
    ParseResult r;
    r.diagnostics = std::move(diags);
    if (r.diagnostics.empty()) r.doc = std::move(doc);
    return r;
  }

  bool payload_target(const SourceLine& l, std::size_t cur, const char* what) {
    if (cur == static_cast<std::size_t>(-1)) {
      err(l.number, l.tokens[0].column, "SYNTAX",
          std::string(what) + " payload must follow a gate declaration");
      return false;
    }
    if (doc.gates[cur].has_payload()) {
      err(l.number, l.tokens[0].column, "SYNTAX",
          "gate '" + doc.gates[cur].id + "' already has a payload");
      return false;
    }
    if (doc.kind == DocumentKind::Syntactic) {
      err(l.number, l.tokens[0].column, "SYNTAX",
          "payloads are not allowed in syntactic documents");
      return false;
    }
    return true;
  }

  ParseResult run() {
    if (lines.empty()) {
      err(1, 1, "SYNTAX", "empty document: expected 'kind <syntactic|boolean|quantum>'");
      return finish();
    }

    // Header: kind, then width (balanced) or inputs/outputs (general).
    {
      const SourceLine& l = lines[0];
      if (l.tokens[0].text != "kind" || l.tokens.size() != 2) {
        err(l.number, l.tokens[0].column, "SYNTAX",
            "expected 'kind <syntactic|boolean|quantum>'");
      } else {
        const std::string& k = l.tokens[1].text;
        if (k == "syntactic") {
          doc.kind = DocumentKind::Syntactic;
        } else if (k == "boolean") {
          doc.kind = DocumentKind::Boolean;
        } else if (k == "quantum") {
          doc.kind = DocumentKind::Quantum;
        } else {
          err(l.number, l.tokens[1].column, "SYNTAX", "unknown kind '" + k + "'");
        }
      }
    }

    std::size_t i = 1;
    bool general = false;
    if (i >= lines.size()) {
      err(lines.back().number, 1, "SYNTAX",
          "expected 'width <w>' or 'inputs <names...>'");
      return finish();
    }
    if (lines[i].tokens[0].text == "width") {
      const SourceLine& l = lines[i];
      long long w = 0;
      if (l.tokens.size() != 2 || !parse_uint(l.tokens[1].text, &w) || w > 1000000) {
        err(l.number, l.tokens[0].column, "SYNTAX",
            "expected 'width <nonnegative integer>'");
        doc.width = 0;
      } else {
        doc.width = static_cast<int>(w);
        width_ok = true;
      }
      ++i;
    } else if (lines[i].tokens[0].text == "inputs") {
      general = true;
      std::set<std::string> seen;
      for (std::size_t t = 1; t < lines[i].tokens.size(); ++t) {
        const Token& tok = lines[i].tokens[t];
        if (!seen.insert(tok.text).second) {
          err(lines[i].number, tok.column, "DUPLICATE_ID",
              "duplicate input name '" + tok.text + "'");
          continue;
        }
        doc.input_names.push_back(tok.text);
      }
      ++i;
      if (i < lines.size() && lines[i].tokens[0].text == "outputs") {
        std::set<std::string> oseen;
        for (std::size_t t = 1; t < lines[i].tokens.size(); ++t) {
          const Token& tok = lines[i].tokens[t];
          if (!oseen.insert(tok.text).second) {
            err(lines[i].number, tok.column, "DUPLICATE_ID",
                "duplicate output name '" + tok.text + "'");
            continue;
          }
          doc.output_names.push_back(tok.text);
        }
        ++i;
      } else {
        int ln = i < lines.size() ? lines[i].number : lines.back().number;
        err(ln, 1, "SYNTAX", "expected 'outputs <names...>' after the inputs line");
      }
    } else {
      err(lines[i].number, lines[i].tokens[0].column, "SYNTAX",
          "expected 'width <w>' or 'inputs <names...>'");
      return finish();
    }

    // Node-id namespace for duplicate detection.
    std::set<std::string> node_ids;
    if (general) {
      for (const std::string& n : doc.input_names) node_ids.insert("in:" + n);
      for (const std::string& n : doc.output_names) node_ids.insert("out:" + n);
    }
    auto collides_with_synth = [&](const std::string& id) {
      if (!width_ok) return false;
      for (const char* p : {"in", "out"}) {
        std::size_t n = std::string(p).size();
        if (id.size() <= n || id.compare(0, n, p) != 0) continue;
        long long r = 0;
        if (parse_uint(id.substr(n), &r) && r >= 1 && r <= doc.width) return true;
      }
      return false;
    };

    std::set<std::string> gate_ids;
    std::size_t cur = static_cast<std::size_t>(-1);

    for (; i < lines.size(); ++i) {
      const SourceLine& l = lines[i];
      const std::string& kw = l.tokens[0].text;

      if (kw == "gate") {
        cur = static_cast<std::size_t>(-1);
        GateDecl g;
        g.decl_line = l.number;
        if (general) {
          if (l.tokens.size() != 2) {
            err(l.number, l.tokens[0].column, "SYNTAX", "expected 'gate <id>'");
            continue;
          }
        } else {
          if (l.tokens.size() != 4 || l.tokens[2].text != "lines") {
            err(l.number, l.tokens[0].column, "SYNTAX",
                "expected 'gate <id> lines <t1,t2,...>'");
            continue;
          }
        }
        g.id = l.tokens[1].text;
        if (!gate_ids.insert(g.id).second) {
          err(l.number, l.tokens[1].column, "DUPLICATE_ID",
              "duplicate gate id '" + g.id + "'");
          continue;
        }
        if (node_ids.count(g.id) || (!general && collides_with_synth(g.id))) {
          err(l.number, l.tokens[1].column, "DUPLICATE_ID",
              "gate id '" + g.id + "' collides with an input or output node id");
          continue;
        }
        if (!general) {
          const Token& lt = l.tokens[3];
          std::set<int> seen;
          std::string part;
          std::stringstream ss(lt.text);
          bool bad = false;
          while (std::getline(ss, part, ',')) {
            long long t = 0;
            if (!parse_uint(part, &t)) {
              err(l.number, lt.column, "SYNTAX",
                  "malformed timeline list '" + lt.text + "'");
              bad = true;
              break;
            }
            if (width_ok && (t < 1 || t > doc.width)) {
              err(l.number, lt.column, "SYNTAX",
                  "timeline " + std::to_string(t) + " outside 1.." +
                      std::to_string(doc.width));
              bad = true;
              break;
            }
            if (!seen.insert(static_cast<int>(t)).second) {
              err(l.number, lt.column, "SYNTAX",
                  "timeline " + std::to_string(t) + " repeated");
              bad = true;
              break;
            }
            g.lines.push_back(static_cast<int>(t));
          }
          if (bad) continue;
          if (g.lines.empty()) {
            err(l.number, lt.column, "SYNTAX", "gate needs at least one timeline");
            continue;
          }
        }
        doc.gates.push_back(std::move(g));
        cur = doc.gates.size() - 1;
        continue;
      }

      if (kw == "op") {
        if (!payload_target(l, cur, "op")) continue;
        if (l.tokens.size() != 2) {
          err(l.number, l.tokens[0].column, "SYNTAX", "expected 'op <builtin-name>'");
          continue;
        }
        std::string name = upper(l.tokens[1].text);
        const auto& known = doc.kind == DocumentKind::Quantum ? quantum_builtins()
                                                              : boolean_builtins();
        if (!known.count(name)) {
          err(l.number, l.tokens[1].column, "UNKNOWN_BUILTIN",
              "unknown builtin '" + l.tokens[1].text + "'");
          continue;
        }
        doc.gates[cur].op = name;
        continue;
      }

      if (kw == "table") {
        if (!payload_target(l, cur, "table")) continue;
        if (l.tokens.size() < 2) {
          err(l.number, l.tokens[0].column, "SYNTAX",
              "expected 'table <in>-><out> ...'");
          continue;
        }
        std::vector<TableEntry> entries;
        std::set<std::vector<int>> seen;
        bool bad = false;
        for (std::size_t t = 1; t < l.tokens.size(); ++t) {
          const Token& tok = l.tokens[t];
          std::size_t arrow = tok.text.find("->");
          TableEntry e;
          if (arrow == std::string::npos ||
              !parse_bits(tok.text.substr(0, arrow), &e.in) ||
              !parse_bits(tok.text.substr(arrow + 2), &e.out)) {
            err(l.number, tok.column, "SYNTAX",
                "malformed table entry '" + tok.text + "'");
            bad = true;
            break;
          }
          if (!entries.empty() && (e.in.size() != entries[0].in.size() ||
                                   e.out.size() != entries[0].out.size())) {
            err(l.number, tok.column, "SYNTAX",
                "table entry '" + tok.text + "' has inconsistent word lengths");
            bad = true;
            break;
          }
          if (!seen.insert(e.in).second) {
            err(l.number, tok.column, "SYNTAX",
                "duplicate table input word '" + bits_string(e.in) + "'");
            bad = true;
            break;
          }
          entries.push_back(std::move(e));
        }
        if (bad) continue;
        std::size_t k = entries[0].in.size();
        if (k > 20) {
          err(l.number, l.tokens[1].column, "SYNTAX", "table input arity above 20");
          continue;
        }
        if (entries.size() != (std::size_t{1} << k)) {
          err(l.number, l.tokens[0].column, "SYNTAX",
              "table must enumerate all " + std::to_string(std::size_t{1} << k) +
                  " input words");
          continue;
        }
        if (!general && k != doc.gates[cur].lines.size()) {
          err(l.number, l.tokens[0].column, "SYNTAX",
              "table input arity " + std::to_string(k) + " does not match " +
                  std::to_string(doc.gates[cur].lines.size()) + " active timelines");
          continue;
        }
        doc.gates[cur].table = std::move(entries);
        continue;
      }

      if (kw == "matrix") {
        if (!payload_target(l, cur, "matrix")) continue;
        if (doc.kind != DocumentKind::Quantum) {
          err(l.number, l.tokens[0].column, "SYNTAX",
              "matrix payloads need a quantum document");
          continue;
        }
        long long dim = 0;
        if (l.tokens.size() != 2 || !parse_uint(l.tokens[1].text, &dim)) {
          err(l.number, l.tokens[0].column, "SYNTAX", "expected 'matrix <dim>'");
          continue;
        }
        if (dim < 2 || dim > 4096 || (dim & (dim - 1)) != 0) {
          err(l.number, l.tokens[1].column, "BAD_MATRIX_SHAPE",
              "matrix dimension must be a power of two in 2..4096");
          continue;
        }
        if (!general &&
            dim != (1LL << doc.gates[cur].lines.size())) {
          err(l.number, l.tokens[1].column, "BAD_MATRIX_SHAPE",
              "matrix dimension " + std::to_string(dim) + " does not match " +
                  std::to_string(doc.gates[cur].lines.size()) + " active timelines");
          continue;
        }
        std::vector<Amplitude> entries;
        bool bad = false;
        std::size_t consumed = 0;
        for (long long r = 0; r < dim; ++r) {
          if (i + 1 + consumed >= lines.size()) {
            err(l.number, l.tokens[1].column, "BAD_MATRIX_SHAPE",
                "expected " + std::to_string(dim) + " matrix rows");
            bad = true;
            break;
          }
          const SourceLine& row = lines[i + 1 + consumed];
          ++consumed;
          if (row.tokens.size() != static_cast<std::size_t>(dim)) {
            err(row.number, row.tokens[0].column, "BAD_MATRIX_SHAPE",
                "matrix row needs " + std::to_string(dim) + " re,im entries");
            bad = true;
            break;
          }
          for (const Token& tok : row.tokens) {
            std::size_t comma = tok.text.find(',');
            double re = 0, im = 0;
            if (comma == std::string::npos ||
                !parse_real(tok.text.substr(0, comma), &re) ||
                !parse_real(tok.text.substr(comma + 1), &im)) {
              err(row.number, tok.column, "BAD_MATRIX_SHAPE",
                  "malformed matrix entry '" + tok.text + "'");
              bad = true;
              break;
            }
            entries.emplace_back(re, im);
          }
          if (bad) break;
        }
        i += consumed;
        if (bad) continue;
        doc.gates[cur].matrix_dim = static_cast<int>(dim);
        doc.gates[cur].matrix = std::move(entries);
        continue;
      }

      if (kw == "wire") {
        if (!general) {
          err(l.number, l.tokens[0].column, "SYNTAX",
              "wire lines need a general (inputs/outputs) document");
          continue;
        }
        if (l.tokens.size() != 4 || l.tokens[2].text != "->") {
          err(l.number, l.tokens[0].column, "SYNTAX",
              "expected 'wire <src> -> <dst>'");
          continue;
        }
        WireDecl w;
        w.decl_line = l.number;
        if (!parse_endpoint(l.tokens[1].text, &w.src)) {
          err(l.number, l.tokens[1].column, "SYNTAX",
              "bad wire endpoint '" + l.tokens[1].text + "'");
          continue;
        }
        if (!parse_endpoint(l.tokens[3].text, &w.dst)) {
          err(l.number, l.tokens[3].column, "SYNTAX",
              "bad wire endpoint '" + l.tokens[3].text + "'");
          continue;
        }
        if (w.src.kind != WireEndpoint::Kind::Input &&
            w.src.kind != WireEndpoint::Kind::Val) {
          err(l.number, l.tokens[1].column, "SYNTAX",
              "wire source must be in:<name> or <gate>.val[k]");
          continue;
        }
        if (w.dst.kind != WireEndpoint::Kind::Output &&
            w.dst.kind != WireEndpoint::Kind::Arg) {
          err(l.number, l.tokens[3].column, "SYNTAX",
              "wire target must be out:<name> or <gate>.arg[k]");
          continue;
        }
        doc.wires.push_back(std::move(w));
        continue;
      }

      if (kw == "kind" || kw == "width" || kw == "inputs" || kw == "outputs") {
        err(l.number, l.tokens[0].column, "SYNTAX", "misplaced '" + kw + "' line");
        continue;
      }

      err(l.number, l.tokens[0].column, "SYNTAX", "unknown keyword '" + kw + "'");
    }

    // A buildable general document must list gates in a coherent order: no
    // gate may appear before one of its ancestors.
    if (diags.empty() && general && doc.gates.size() >= 2) {
      BuildResult br = doc_to_circuit(doc);
      if (br.ok()) {
        const Circuit& c = *br.circuit;
        bool done = false;
        for (std::size_t a = 0; a + 1 < doc.gates.size() && !done; ++a) {
          for (std::size_t b = a + 1; b < doc.gates.size() && !done; ++b) {
            if (c.earlier(doc.gates[b].id, doc.gates[a].id)) {
              err(doc.gates[a].decl_line, 1, "NONCOHERENT_GATE_ORDER",
                  "gate '" + doc.gates[a].id + "' is listed before '" +
                      doc.gates[b].id + "' but comes later in the circuit");
              done = true;
            }
          }
        }
      }
    }

    return finish();
  }
};

std::string endpoint_node(const WireEndpoint& ep) {
  switch (ep.kind) {
    case WireEndpoint::Kind::Input: return "in:" + ep.name;
    case WireEndpoint::Kind::Output: return "out:" + ep.name;
    default: return ep.name;
  }
}

// Truth table from parsed entries; the parser has already vetted shape, but
// conversions must hold on hand-built documents too.
BooleanFunction table_fn(const GateDecl& g) {
  if (g.table.empty())
    throw Error(Err::ARITY_MISMATCH, "gate '" + g.id + "' has an empty table");
  std::size_t k = g.table[0].in.size();
  std::size_t l = g.table[0].out.size();
  if (k > 20 || g.table.size() != (std::size_t{1} << k))
    throw Error(Err::ARITY_MISMATCH,
                "gate '" + g.id + "' table does not enumerate all input words");
  std::vector<std::uint32_t> table(std::size_t{1} << k, 0);
  std::vector<bool> seen(std::size_t{1} << k, false);
  for (const TableEntry& e : g.table) {
    if (e.in.size() != k || e.out.size() != l)
      throw Error(Err::ARITY_MISMATCH,
                  "gate '" + g.id + "' table has inconsistent word lengths");
    std::uint32_t idx = index_from_bits(e.in);
    if (seen[idx])
      throw Error(Err::ARITY_MISMATCH,
                  "gate '" + g.id + "' table repeats input word " +
                      bits_string(e.in));
    seen[idx] = true;
    table[idx] = index_from_bits(e.out);
  }
  return BooleanFunction::from_table(k, l, table);
}

}  // namespace

ParseResult parse(std::string_view text) {
  std::vector<SourceLine> lines = tokenize(text);
  Parser p(lines);
  return p.run();
}

BuildResult doc_to_circuit(const Document& doc) {
  RawCircuit raw;
  std::vector<Violation> extra;
  if (doc.balanced_form()) {
    for (int r = 1; r <= doc.width; ++r) {
      raw.add_input("in" + std::to_string(r), r);
      raw.add_output("out" + std::to_string(r), r);
    }
    for (const GateDecl& g : doc.gates) raw.add_gate(g.id);
    for (int t = 1; t <= doc.width; ++t) {
      std::string ts = std::to_string(t);
      std::string prev = "in" + ts;
      int k = 0;
      for (const GateDecl& g : doc.gates) {
        if (std::find(g.lines.begin(), g.lines.end(), t) == g.lines.end())
          continue;
        raw.add_edge("t" + ts + "e" + std::to_string(k), prev, g.id, t);
        prev = g.id;
        ++k;
      }
      raw.add_edge("t" + ts + "e" + std::to_string(k), prev, "out" + ts, t);
    }
  } else {
    int rank = 0;
    for (const std::string& n : doc.input_names) raw.add_input("in:" + n, ++rank);
    rank = 0;
    for (const std::string& n : doc.output_names)
      raw.add_output("out:" + n, ++rank);
    for (const GateDecl& g : doc.gates) raw.add_gate(g.id);
    std::map<NodeId, std::vector<std::pair<int, EdgeId>>> args;
    std::map<NodeId, std::vector<std::pair<int, EdgeId>>> vals;
    int n = 0;
    for (const WireDecl& w : doc.wires) {
      EdgeId id = "w" + std::to_string(++n);
      raw.add_edge(id, endpoint_node(w.src), endpoint_node(w.dst), 0);
      if (w.src.kind == WireEndpoint::Kind::Val)
        vals[w.src.name].push_back({w.src.pos, id});
      if (w.dst.kind == WireEndpoint::Kind::Arg)
        args[w.dst.name].push_back({w.dst.pos, id});
    }
    auto place = [&extra](std::map<NodeId, std::vector<std::pair<int, EdgeId>>>& m,
                          std::map<NodeId, std::vector<EdgeId>>& out,
                          const char* what) {
      for (auto& [g, lst] : m) {
        std::stable_sort(lst.begin(), lst.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        bool ok = true;
        for (std::size_t p = 0; p < lst.size(); ++p)
          if (lst[p].first != static_cast<int>(p) + 1) ok = false;
        if (!ok) {
          Violation v;
          v.code = Err::BAD_EDGE_MAP;
          v.node = g;
          v.message = std::string(what) + " positions on gate '" + g +
                      "' must be 1..k without gaps or repeats";
          extra.push_back(std::move(v));
        }
        std::vector<EdgeId> edges;
        for (auto& pe : lst) edges.push_back(pe.second);
        out[g] = std::move(edges);
      }
    };
    place(args, raw.gate_in, "argument");
    place(vals, raw.gate_out, "value");
  }
  BuildResult res = build_circuit(raw);
  if (!extra.empty()) {
    for (Violation& v : extra) res.report.violations.push_back(std::move(v));
    res.circuit.reset();
  }
  return res;
}

BooleanCircuit doc_to_boolean(const Document& doc) {
  if (doc.kind != DocumentKind::Boolean)
    throw Error(Err::KIND_MISMATCH, "document kind is not boolean");
  BuildResult br = doc_to_circuit(doc);
  if (!br.ok())
    throw Error(br.report.violations.front().code,
                "invalid circuit\n" + br.report.to_string());
  std::map<NodeId, GateSpec> specs;
  for (const GateDecl& g : doc.gates) {
    if (g.matrix_dim > 0)
      throw Error(Err::KIND_MISMATCH,
                  "gate '" + g.id + "' has a matrix payload in a boolean document");
    if (!g.op.empty()) {
      specs.insert({g.id, GateSpec{BooleanFunction::builtin(g.op), {}, {}}});
    } else if (!g.table.empty()) {
      specs.insert({g.id, GateSpec{table_fn(g), {}, {}}});
    }
  }
  return attach_boolean(*br.circuit, specs);
}

QuantumCircuit doc_to_quantum(const Document& doc) {
  if (doc.kind != DocumentKind::Quantum)
    throw Error(Err::KIND_MISMATCH, "document kind is not quantum");
  BuildResult br = doc_to_circuit(doc);
  if (!br.ok())
    throw Error(br.report.violations.front().code,
                "invalid circuit\n" + br.report.to_string());
  std::map<NodeId, UnitaryMatrix> ops;
  for (const GateDecl& g : doc.gates) {
    if (!g.op.empty()) {
      ops.insert({g.id, UnitaryMatrix::builtin(g.op)});
    } else if (!g.table.empty()) {
      ops.insert({g.id, permutation_lift(table_fn(g))});
    } else if (g.matrix_dim > 0) {
      ops.insert({g.id, UnitaryMatrix::from_entries(g.matrix_dim, g.matrix)});
    }
  }
  return attach_quantum(*br.circuit, ops);
}

namespace {

std::string strip_prefix(const std::string& s, const char* prefix) {
  std::size_t n = std::string_view(prefix).size();
  if (s.size() > n && s.compare(0, n, prefix) == 0) return s.substr(n);
  return s;
}

// Wires in edge-id order; argument/value positions follow the supplied
// per-gate edge orders so semantic attachments survive the round trip.
template <typename InOrder, typename OutOrder>
void emit_wires(const Circuit& c, Document* d, InOrder in_order, OutOrder out_order) {
  auto position = [](const std::vector<EdgeId>& edges, const EdgeId& e) {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i] == e) return static_cast<int>(i) + 1;
    return 0;
  };
  for (const auto& [e, ends] : c.edges()) {
    WireDecl w;
    if (c.kind(ends.source).type == NodeType::Input) {
      w.src.kind = WireEndpoint::Kind::Input;
      w.src.name = strip_prefix(ends.source, "in:");
    } else {
      w.src.kind = WireEndpoint::Kind::Val;
      w.src.name = ends.source;
      w.src.pos = position(out_order(ends.source), e);
    }
    if (c.kind(ends.target).type == NodeType::Output) {
      w.dst.kind = WireEndpoint::Kind::Output;
      w.dst.name = strip_prefix(ends.target, "out:");
    } else {
      w.dst.kind = WireEndpoint::Kind::Arg;
      w.dst.name = ends.target;
      w.dst.pos = position(in_order(ends.target), e);
    }
    d->wires.push_back(std::move(w));
  }
}

Document skeleton_from_circuit(const Circuit& c) {
  Document d;
  d.kind = DocumentKind::Syntactic;
  if (c.is_balanced() && c.has_timelines()) {
    d.width = static_cast<int>(c.width());
    for (const NodeId& g : linearize(c)) {
      GateDecl gd;
      gd.id = g;
      for (int t : c.active_timelines(g)) gd.lines.push_back(t);
      d.gates.push_back(std::move(gd));
    }
  } else {
    for (const NodeId& id : c.inputs()) d.input_names.push_back(strip_prefix(id, "in:"));
    for (const NodeId& id : c.outputs())
      d.output_names.push_back(strip_prefix(id, "out:"));
    for (const NodeId& g : linearize(c)) {
      GateDecl gd;
      gd.id = g;
      d.gates.push_back(std::move(gd));
    }
  }
  return d;
}

std::vector<TableEntry> table_entries(const BooleanFunction& f) {
  std::vector<TableEntry> out;
  std::size_t k = f.arity_in();
  std::size_t l = f.arity_out();
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << k); ++x) {
    TableEntry e;
    e.in = bits_from_index(x, k);
    e.out = bits_from_index(f.apply_index(x), l);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Document document_from_circuit(const Circuit& c) {
  Document d = skeleton_from_circuit(c);
  if (!d.balanced_form())
    emit_wires(c, &d, [&c](const NodeId& g) { return c.gate_in(g); },
               [&c](const NodeId& g) { return c.gate_out(g); });
  return d;
}

Document document_from_boolean(const BooleanCircuit& b) {
  const Circuit& c = b.base();
  Document d = skeleton_from_circuit(c);
  d.kind = DocumentKind::Boolean;
  for (GateDecl& g : d.gates) g.table = table_entries(b.fn(g.id));
  if (!d.balanced_form())
    emit_wires(c, &d, [&b](const NodeId& g) { return b.arg_edges(g); },
               [&b](const NodeId& g) { return b.val_edges(g); });
  return d;
}

Document document_from_quantum(const QuantumCircuit& qc) {
  Document d = skeleton_from_circuit(qc.base());
  d.kind = DocumentKind::Quantum;
  for (GateDecl& g : d.gates) {
    const UnitaryMatrix& u = qc.op(g.id);
    g.matrix_dim = u.dim();
    g.matrix.reserve(static_cast<std::size_t>(u.dim()) * u.dim());
    for (int r = 0; r < u.dim(); ++r)
      for (int col = 0; col < u.dim(); ++col) g.matrix.push_back(u.at(r, col));
  }
  return d;
}

std::string serialize(const Document& doc) {
  // Canonical gate order: the deterministic linearization when the document
  // builds, listing order otherwise. Linearization respects every timeline's
  // internal chain, so a balanced document's implied wiring is unchanged.
  std::vector<const GateDecl*> order;
  order.reserve(doc.gates.size());
  for (const GateDecl& g : doc.gates) order.push_back(&g);
  {
    BuildResult br = doc_to_circuit(doc);
    if (br.ok() && br.circuit->gates().size() == doc.gates.size()) {
      std::map<std::string, const GateDecl*> by_id;
      for (const GateDecl& g : doc.gates) by_id[g.id] = &g;
      std::vector<const GateDecl*> lin;
      for (const NodeId& id : linearize(*br.circuit)) {
        auto it = by_id.find(id);
        if (it == by_id.end()) break;
        lin.push_back(it->second);
      }
      if (lin.size() == order.size()) order = std::move(lin);
    }
  }

  std::ostringstream out;
  out << "kind " << kind_name(doc.kind) << "\n";
  if (doc.balanced_form()) {
    out << "width " << doc.width << "\n";
  } else {
    out << "inputs";
    for (const std::string& n : doc.input_names) out << ' ' << n;
    out << "\n";
    out << "outputs";
    for (const std::string& n : doc.output_names) out << ' ' << n;
    out << "\n";
  }
  for (const GateDecl* g : order) {
    out << "gate " << g->id;
    if (doc.balanced_form()) {
      out << " lines ";
      for (std::size_t i = 0; i < g->lines.size(); ++i) {
        if (i) out << ',';
        out << g->lines[i];
      }
    }
    out << "\n";
    if (!g->op.empty()) {
      out << "  op " << g->op << "\n";
    } else if (!g->table.empty()) {
      std::vector<TableEntry> sorted = g->table;
      std::sort(sorted.begin(), sorted.end(),
                [](const TableEntry& a, const TableEntry& b) { return a.in < b.in; });
      out << "  table";
      for (const TableEntry& e : sorted)
        out << ' ' << bits_string(e.in) << "->" << bits_string(e.out);
      out << "\n";
    } else if (g->matrix_dim > 0) {
      out << "  matrix " << g->matrix_dim << "\n";
      for (int r = 0; r < g->matrix_dim; ++r) {
        out << "  ";
        for (int c = 0; c < g->matrix_dim; ++c) {
          if (c) out << ' ';
          const Amplitude& a =
              g->matrix[static_cast<std::size_t>(r) * g->matrix_dim + c];
          out << fmt_real(a.real()) << ',' << fmt_real(a.imag());
        }
        out << "\n";
      }
    }
  }
  for (const WireDecl& w : doc.wires)
    out << "wire " << endpoint_text(w.src) << " -> " << endpoint_text(w.dst) << "\n";
  return out.str();
}

}  // namespace circuitum
