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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "circuitum/boolean.hpp"
#include "circuitum/circuit.hpp"
#include "circuitum/decompose.hpp"
#include "circuitum/error.hpp"
#include "circuitum/order.hpp"
#include "circuitum/quantum.hpp"
#include "circuitum/text.hpp"

using nlohmann::json;
using namespace circuitum;

namespace {

// Exit codes: 0 success, 1 domain error, 2 usage error.
struct ExitCode {
  int code;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

GateSet parse_gateset(const std::string& s) {
  GateSet out;
  for (const std::string& part : split_on(s, ',')) {
    std::string t = trim(part);
    if (t.empty()) throw UsageError("empty gate name in '" + s + "'");
    out.insert(t);
  }
  return out;
}

CoherentPartition parse_partition(const std::string& s) {
  CoherentPartition p;
  for (const std::string& block : split_on(s, '|')) {
    std::string t = trim(block);
    if (t.empty()) throw UsageError("empty block in partition '" + s + "'");
    p.push_back(parse_gateset(t));
  }
  return p;
}

std::vector<std::string> parse_name_list(const std::string& s) {
  std::vector<std::string> out;
  for (const std::string& part : split_on(s, ',')) {
    std::string t = trim(part);
    if (t.empty()) throw UsageError("empty name in list '" + s + "'");
    out.push_back(t);
  }
  return out;
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  for (char c : s) {
    if (c == '0') {
      w.push_back(0);
    } else if (c == '1') {
      w.push_back(1);
    } else {
      throw Error(Err::BAD_INPUT_LENGTH,
                  std::string("input word must use only 0/1, got '") + c + "'");
    }
  }
  return w;
}

std::string word_text(const std::vector<int>& w) {
  std::string s;
  for (int b : w) s.push_back(b ? '1' : '0');
  return s;
}

int width_cap_from_env() {
  int cap = 20;
  if (const char* env = std::getenv("CIRCUITUM_WIDTH_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') {
      std::cerr << "warning: ignoring non-numeric CIRCUITUM_WIDTH_CAP '" << env
                << "'\n";
    } else {
      if (v < 1) v = 1;
      if (v > 24) v = 24;
      cap = static_cast<int>(v);
    }
  }
  return cap;
}

// Parses a document, reporting diagnostics on stderr and exiting with the
// domain-error code when the text is malformed.
Document load_doc(const std::string& path) {
  ParseResult pr = parse(read_file(path));
  if (!pr.ok()) {
    for (const Diagnostic& d : pr.diagnostics)
      std::cerr << path << ":" << d.to_string() << "\n";
    throw ExitCode{1};
  }
  return *pr.doc;
}

Circuit build_from_doc(const Document& doc) {
  BuildResult br = doc_to_circuit(doc);
  if (!br.ok())
    throw Error(br.report.violations.front().code,
                "invalid circuit\n" + br.report.to_string());
  return *br.circuit;
}

const char* kind_text(DocumentKind k) {
  switch (k) {
    case DocumentKind::Syntactic: return "syntactic";
    case DocumentKind::Boolean: return "boolean";
    case DocumentKind::Quantum: return "quantum";
  }
  return "syntactic";
}

json partition_json(const CoherentPartition& p) {
  json blocks = json::array();
  for (const GateSet& block : p) blocks.push_back(block);
  return blocks;
}

std::string partition_text(const CoherentPartition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += " | ";
    bool first = true;
    for (const NodeId& g : p[i]) {
      if (!first) out += ",";
      out += g;
      first = false;
    }
  }
  return out;
}

json state_json(const StateVector& s) {
  json out = json::array();
  for (std::uint32_t i = 0; i < s.dim(); ++i) {
    const Amplitude& a = s.amp(i);
    if (a == Amplitude{0.0, 0.0}) continue;
    out.push_back({{"index", i}, {"re", a.real()}, {"im", a.imag()}});
  }
  return out;
}

void emit_json(const json& obj) { std::cout << obj.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, bool json_mode) {
  ParseResult pr = parse(read_file(file));
  json obj{{"command", "validate"}, {"file", file}};
  json diags = json::array();
  for (const Diagnostic& d : pr.diagnostics)
    diags.push_back({{"line", d.line},
                     {"column", d.column},
                     {"code", d.code},
                     {"message", d.message}});
  obj["diagnostics"] = diags;
  obj["violations"] = json::array();
  obj["error"] = nullptr;

  if (!pr.ok()) {
    obj["valid"] = false;
    if (json_mode) {
      emit_json(obj);
    } else {
      for (const Diagnostic& d : pr.diagnostics)
        std::cout << file << ":" << d.to_string() << "\n";
      std::cout << "invalid\n";
    }
    return 1;
  }

  BuildResult br = doc_to_circuit(*pr.doc);
  json viols = json::array();
  for (const Violation& v : br.report.violations)
    viols.push_back({{"code", err_name(v.code)},
                     {"node", v.node},
                     {"edge", v.edge},
                     {"message", v.message}});
  obj["violations"] = viols;
  if (!br.ok()) {
    obj["valid"] = false;
    if (json_mode) {
      emit_json(obj);
    } else {
      std::cout << br.report.to_string();
      std::cout << "invalid\n";
    }
    return 1;
  }

  // A typed document must also carry usable payloads.
  try {
    if (pr.doc->kind == DocumentKind::Boolean) doc_to_boolean(*pr.doc);
    if (pr.doc->kind == DocumentKind::Quantum) doc_to_quantum(*pr.doc);
  } catch (const Error& e) {
    obj["valid"] = false;
    obj["error"] = e.what();
    if (json_mode) {
      emit_json(obj);
    } else {
      std::cout << e.what() << "\n";
      std::cout << "invalid\n";
    }
    return 1;
  }

  obj["valid"] = true;
  if (json_mode) {
    emit_json(obj);
  } else {
    std::cout << "valid\n";
  }
  return 0;
}

int cmd_info(const std::string& file, bool json_mode) {
  Document doc = load_doc(file);
  Circuit c = build_from_doc(doc);
  bool balanced = c.is_balanced() && c.has_timelines();

  json obj{{"command", "info"},
           {"file", file},
           {"kind", kind_text(doc.kind)},
           {"inputs", c.inputs().size()},
           {"outputs", c.outputs().size()},
           {"gates", c.gates().size()},
           {"edges", c.edges().size()},
           {"depth", c.depth()},
           {"balanced", balanced},
           {"width", nullptr},
           {"timelines", nullptr}};

  std::vector<std::pair<int, std::vector<NodeId>>> table;
  if (balanced) {
    obj["width"] = c.width();
    json tl = json::array();
    for (int t = 1; t <= c.width(); ++t) {
      table.push_back({t, c.thread(t).gates});
      tl.push_back({{"timeline", t}, {"gates", table.back().second}});
    }
    obj["timelines"] = tl;
  }

  if (json_mode) {
    emit_json(obj);
    return 0;
  }
  std::cout << "kind: " << kind_text(doc.kind) << "\n";
  std::cout << "inputs: " << c.inputs().size() << "\n";
  std::cout << "outputs: " << c.outputs().size() << "\n";
  std::cout << "gates: " << c.gates().size() << "\n";
  std::cout << "edges: " << c.edges().size() << "\n";
  std::cout << "depth: " << c.depth() << "\n";
  std::cout << "balanced: " << (balanced ? "yes" : "no") << "\n";
  if (balanced) {
    std::cout << "width: " << c.width() << "\n";
    for (const auto& [t, gates] : table) {
      std::cout << "timeline " << t << ":";
      for (const NodeId& g : gates) std::cout << " " << g;
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_schedule(const std::string& file, const std::string& strategy,
                 bool json_mode) {
  Document doc = load_doc(file);
  Circuit c = build_from_doc(doc);
  CoherentPartition p;
  if (strategy == "eager") {
    p = layer_eager(c);
  } else if (strategy == "lazy") {
    p = layer_lazy(c);
  } else {
    for (const NodeId& g : linearize(c)) p.push_back({g});
  }
  if (json_mode) {
    emit_json({{"command", "schedule"},
               {"file", file},
               {"strategy", strategy},
               {"blocks", partition_json(p)}});
  } else {
    std::cout << partition_text(p) << "\n";
  }
  return 0;
}

// Carves the member set out of the circuit while keeping any Boolean or
// quantum payloads attached to the surviving gates.
Document slice_doc(const Document& doc, const GateSet& x) {
  switch (doc.kind) {
    case DocumentKind::Boolean:
      return document_from_boolean(slice_boolean(doc_to_boolean(doc), x));
    case DocumentKind::Quantum: {
      QuantumCircuit qc = doc_to_quantum(doc);
      Circuit s = slice(qc.base(), x);
      std::map<NodeId, UnitaryMatrix> ops;
      for (const NodeId& g : x) ops.insert({g, qc.op(g)});
      return document_from_quantum(attach_quantum(s, ops));
    }
    case DocumentKind::Syntactic:
    default:
      return document_from_circuit(slice(build_from_doc(doc), x));
  }
}

int cmd_slice(const std::string& file, const std::string& gates, bool json_mode) {
  Document doc = load_doc(file);
  GateSet x = parse_gateset(gates);
  std::string text = serialize(slice_doc(doc, x));
  if (json_mode) {
    emit_json({{"command", "slice"}, {"file", file}, {"gates", x}, {"text", text}});
  } else {
    std::cout << text;
  }
  return 0;
}

std::vector<Document> decompose_doc(const Document& doc,
                                    const CoherentPartition& p) {
  std::vector<Document> out;
  switch (doc.kind) {
    case DocumentKind::Boolean: {
      for (const BooleanCircuit& f : decompose_boolean(doc_to_boolean(doc), p))
        out.push_back(document_from_boolean(f));
      return out;
    }
    case DocumentKind::Quantum: {
      QuantumCircuit qc = doc_to_quantum(doc);
      std::vector<Circuit> parts = decompose(qc.base(), p);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        std::map<NodeId, UnitaryMatrix> ops;
        for (const NodeId& g : p[i]) ops.insert({g, qc.op(g)});
        out.push_back(document_from_quantum(attach_quantum(parts[i], ops)));
      }
      return out;
    }
    case DocumentKind::Syntactic:
    default: {
      for (const Circuit& f : decompose(build_from_doc(doc), p))
        out.push_back(document_from_circuit(f));
      return out;
    }
  }
}

int cmd_decompose(const std::string& file, const std::string& partition,
                  const std::string& out_dir, bool json_mode) {
  Document doc = load_doc(file);
  CoherentPartition p = parse_partition(partition);
  std::vector<Document> factors = decompose_doc(doc, p);
  std::vector<std::string> texts;
  for (const Document& f : factors) texts.push_back(serialize(f));

  std::vector<std::string> files;
  if (!out_dir.empty()) {
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    std::string stem = std::filesystem::path(file).stem().string();
    for (std::size_t i = 0; i < texts.size(); ++i) {
      std::filesystem::path out =
          dir / (stem + "_factor" + std::to_string(i + 1) + ".circ");
      std::ofstream f(out, std::ios::binary);
      if (!f) throw UsageError("cannot write file '" + out.string() + "'");
      f << texts[i];
      files.push_back(out.string());
    }
  }

  if (json_mode) {
    json obj{{"command", "decompose"},
             {"file", file},
             {"partition", partition_json(p)},
             {"factors", texts}};
    obj["files"] = files.empty() ? json(nullptr) : json(files);
    emit_json(obj);
    return 0;
  }
  if (!files.empty()) {
    for (const std::string& f : files) std::cout << f << "\n";
  } else {
    for (std::size_t i = 0; i < texts.size(); ++i) {
      std::cout << "# factor " << (i + 1) << " of " << texts.size() << "\n";
      std::cout << texts[i];
    }
  }
  return 0;
}

int cmd_isomorphic(const std::string& file_a, const std::string& file_b,
                   bool json_mode) {
  Circuit a = build_from_doc(load_doc(file_a));
  Circuit b = build_from_doc(load_doc(file_b));
  std::optional<IsoWitness> w = isomorphic(a, b);
  if (json_mode) {
    json obj{{"command", "isomorphic"},
             {"a", file_a},
             {"b", file_b},
             {"isomorphic", w.has_value()}};
    if (w) {
      obj["node_map"] = w->node_map;
      obj["edge_map"] = w->edge_map;
    } else {
      obj["node_map"] = nullptr;
      obj["edge_map"] = nullptr;
    }
    emit_json(obj);
    return w ? 0 : 1;
  }
  if (!w) {
    std::cout << "not isomorphic\n";
    return 1;
  }
  std::cout << "isomorphic\n";
  for (const auto& [from, to] : w->node_map)
    std::cout << "node " << from << " -> " << to << "\n";
  for (const auto& [from, to] : w->edge_map)
    std::cout << "edge " << from << " -> " << to << "\n";
  return 0;
}

int cmd_eval(const std::string& file, const std::string& input,
             const std::string& schedule, bool trace, bool json_mode) {
  Document doc = load_doc(file);
  BooleanCircuit b = doc_to_boolean(doc);
  std::vector<int> word = parse_word(input);

  json obj{{"command", "eval"}, {"file", file}, {"input", input}};
  std::optional<ComputationTrace> tr;
  if (!schedule.empty()) {
    tr = run_schedule(b, word, parse_partition(schedule));
  } else if (trace) {
    CoherentPartition p;
    for (const NodeId& g : linearize(b.base())) p.push_back({g});
    tr = run_schedule(b, word, p);
  }
  std::vector<int> out = tr ? tr->output : fun(b, word);
  obj["output"] = word_text(out);
  if (tr && trace) {
    obj["schedule"] = partition_json(tr->schedule);
    obj["valuation"] = tr->valuation;
  } else {
    obj["schedule"] = nullptr;
    obj["valuation"] = nullptr;
  }

  if (json_mode) {
    emit_json(obj);
    return 0;
  }
  if (tr && trace) {
    std::cout << "input " << input << "\n";
    for (std::size_t i = 0; i < tr->schedule.size(); ++i) {
      std::cout << "block " << (i + 1) << ":";
      for (const NodeId& g : tr->schedule[i]) std::cout << " " << g;
      std::cout << "\n";
    }
    for (const auto& [e, v] : tr->valuation)
      std::cout << "edge " << e << " = " << v << "\n";
    std::cout << "output " << word_text(out) << "\n";
  } else {
    std::cout << word_text(out) << "\n";
  }
  return 0;
}

int cmd_check_reversible(const std::string& file, const std::string& method,
                         bool json_mode) {
  Document doc = load_doc(file);
  BooleanCircuit b = doc_to_boolean(doc);
  ReversibilityMethod m = ReversibilityMethod::CrossCheck;
  if (method == "gates") m = ReversibilityMethod::ByGates;
  if (method == "table") m = ReversibilityMethod::ByTable;
  bool r = is_reversible_circuit(b, m);
  if (json_mode) {
    emit_json({{"command", "check-reversible"},
               {"file", file},
               {"method", method},
               {"reversible", r}});
  } else {
    std::cout << (r ? "reversible" : "not reversible") << "\n";
  }
  return r ? 0 : 1;
}

StateVector load_state(const std::string& inline_text,
                       const std::string& state_file, int width) {
  if (!inline_text.empty() && !state_file.empty())
    throw UsageError("--input and --state-file are mutually exclusive");
  if (inline_text.empty() && state_file.empty())
    throw UsageError("one of --input or --state-file is required");
  std::string text = inline_text.empty() ? read_file(state_file) : inline_text;
  StateVector s = parse_state(text, width);
  if (std::abs(s.norm2() - 1.0) > 1e-9)
    std::cerr << "warning: input state is not normalized (norm^2 = " << s.norm2()
              << ")\n";
  return s;
}

int cmd_simulate(const std::string& file, const std::string& input,
                 const std::string& state_file, const std::string& schedule,
                 bool trace, bool json_mode) {
  Document doc = load_doc(file);
  QuantumCircuit qc = doc_to_quantum(doc);
  StateVector in = load_state(input, state_file, qc.width());
  CoherentPartition p =
      schedule.empty() ? layer_eager(qc.base()) : parse_partition(schedule);
  std::vector<StateVector> traj = simulate(qc, in, p, width_cap_from_env());

  if (json_mode) {
    json obj{{"command", "simulate"},
             {"file", file},
             {"width", qc.width()},
             {"schedule", partition_json(p)},
             {"final", state_json(traj.back())}};
    if (trace) {
      json steps = json::array();
      for (const StateVector& s : traj) steps.push_back(state_json(s));
      obj["trajectory"] = steps;
    } else {
      obj["trajectory"] = nullptr;
    }
    emit_json(obj);
    return 0;
  }
  if (trace) {
    for (std::size_t k = 0; k < traj.size(); ++k) {
      std::cout << "step " << k << "\n";
      std::cout << format_state(traj[k]);
    }
  } else {
    std::cout << format_state(traj.back());
  }
  return 0;
}

int cmd_equiv_orders(const std::string& file, const std::string& input,
                     const std::string& state_file, int trials,
                     std::uint64_t seed, bool json_mode) {
  Document doc = load_doc(file);
  if (doc.kind == DocumentKind::Syntactic)
    throw Error(Err::KIND_MISMATCH,
                "equiv-orders needs a boolean or quantum document");
  std::mt19937_64 rng(seed);

  if (doc.kind == DocumentKind::Boolean) {
    BooleanCircuit b = doc_to_boolean(doc);
    std::vector<int> word = parse_word(input);
    std::vector<int> baseline = fun(b, word);
    int mismatches = 0;
    for (int t = 0; t < trials; ++t) {
      CoherentPartition p = random_coherent_partition(b.base(), rng);
      if (run_schedule(b, word, p).output != baseline) ++mismatches;
    }
    bool agree = mismatches == 0;
    if (json_mode) {
      emit_json({{"command", "equiv-orders"},
                 {"file", file},
                 {"kind", "boolean"},
                 {"trials", trials},
                 {"seed", seed},
                 {"baseline", word_text(baseline)},
                 {"mismatches", mismatches},
                 {"agree", agree}});
    } else {
      std::cout << "trials " << trials << "\n";
      std::cout << "mismatches " << mismatches << "\n";
      std::cout << (agree ? "agree" : "disagree") << "\n";
    }
    return agree ? 0 : 1;
  }

  QuantumCircuit qc = doc_to_quantum(doc);
  StateVector in = load_state(input, state_file, qc.width());
  int cap = width_cap_from_env();
  StateVector baseline = simulate(qc, in, layer_eager(qc.base()), cap).back();
  double max_dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    CoherentPartition p = random_antichain_partition(qc.base(), rng);
    StateVector out = simulate(qc, in, p, cap).back();
    for (std::uint32_t i = 0; i < out.dim(); ++i)
      max_dev = std::max(max_dev, std::abs(out.amp(i) - baseline.amp(i)));
  }
  bool agree = max_dev <= kStateTol;
  if (json_mode) {
    emit_json({{"command", "equiv-orders"},
               {"file", file},
               {"kind", "quantum"},
               {"trials", trials},
               {"seed", seed},
               {"max_deviation", max_dev},
               {"tolerance", kStateTol},
               {"agree", agree}});
  } else {
    std::cout << "trials " << trials << "\n";
    std::cout << "max deviation " << max_dev << "\n";
    std::cout << (agree ? "agree" : "disagree") << "\n";
  }
  return agree ? 0 : 1;
}

Poset load_poset(const std::string& path) {
  std::string text = read_file(path);
  std::set<std::string> elements;
  std::set<std::pair<std::string, std::string>> less;
  bool have_elements = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "elements") {
      for (std::size_t i = 1; i < toks.size(); ++i) elements.insert(toks[i]);
      have_elements = true;
    } else if (toks[0] == "less" && toks.size() == 3) {
      less.insert({toks[1], toks[2]});
    } else {
      throw Error(Err::INVALID_POSET,
                  path + ":" + std::to_string(lineno) +
                      ": expected 'elements <names...>' or 'less <a> <b>'");
    }
  }
  if (!have_elements)
    throw Error(Err::INVALID_POSET, path + ": missing 'elements' line");
  return Poset(std::move(elements), std::move(less), true);
}

int cmd_transpose_path(const std::string& poset_file, const std::string& from,
                       const std::string& to, bool json_mode) {
  Poset poset = load_poset(poset_file);
  LinearOrder a = parse_name_list(from);
  LinearOrder b = parse_name_list(to);
  TranspositionPath path = transposition_path(poset, a, b);
  std::vector<LinearOrder> orders = replay_path(path);

  if (json_mode) {
    emit_json({{"command", "transpose-path"},
               {"poset", poset_file},
               {"from", a},
               {"to", b},
               {"length", path.swaps.size()},
               {"swaps", path.swaps},
               {"orders", orders}});
    return 0;
  }
  std::cout << "length " << path.swaps.size() << "\n";
  std::cout << "swaps";
  for (std::size_t s : path.swaps) std::cout << " " << s;
  std::cout << "\n";
  for (const LinearOrder& o : orders) {
    std::cout << "order ";
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << o[i];
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circuitum: a calculus of syntactic circuits"};
  app.require_subcommand(1);
  bool json_mode = false;

  auto add_json = [&json_mode](CLI::App* sub) {
    sub->add_flag("--json", json_mode, "emit one JSON object on stdout");
  };

  // validate
  auto* c_validate = app.add_subcommand("validate", "check a .circ file");
  std::string v_file;
  c_validate->add_option("file", v_file, ".circ file")->required()->check(CLI::ExistingFile);
  add_json(c_validate);

  // info
  auto* c_info = app.add_subcommand("info", "summarize a circuit");
  std::string i_file;
  c_info->add_option("file", i_file, ".circ file")->required()->check(CLI::ExistingFile);
  add_json(c_info);

  // schedule
  auto* c_schedule = app.add_subcommand("schedule", "emit a coherent partition");
  std::string s_file, s_strategy = "eager";
  c_schedule->add_option("file", s_file, ".circ file")->required()->check(CLI::ExistingFile);
  c_schedule->add_option("--strategy", s_strategy, "eager, lazy, or linear")
      ->check(CLI::IsMember({"eager", "lazy", "linear"}));
  add_json(c_schedule);

  // slice
  auto* c_slice = app.add_subcommand("slice", "slice determined by a gate set");
  std::string sl_file, sl_gates;
  c_slice->add_option("file", sl_file, ".circ file")->required()->check(CLI::ExistingFile);
  c_slice->add_option("--gates", sl_gates, "comma-separated gate ids")->required();
  add_json(c_slice);

  // decompose
  auto* c_decompose = app.add_subcommand("decompose", "factor along a coherent partition");
  std::string d_file, d_partition, d_out_dir;
  c_decompose->add_option("file", d_file, ".circ file")->required()->check(CLI::ExistingFile);
  c_decompose->add_option("--partition", d_partition, "blocks like \"g1,g2|g3\"")->required();
  c_decompose->add_option("--out-dir", d_out_dir, "write factor files here");
  add_json(c_decompose);

  // isomorphic
  auto* c_iso = app.add_subcommand("isomorphic", "structural equality up to renaming");
  std::string iso_a, iso_b;
  c_iso->add_option("a", iso_a, "first .circ file")->required()->check(CLI::ExistingFile);
  c_iso->add_option("b", iso_b, "second .circ file")->required()->check(CLI::ExistingFile);
  add_json(c_iso);

  // eval
  auto* c_eval = app.add_subcommand("eval", "evaluate a boolean circuit");
  std::string e_file, e_input, e_schedule;
  bool e_trace = false;
  c_eval->add_option("file", e_file, ".circ file")->required()->check(CLI::ExistingFile);
  c_eval->add_option("--input", e_input, "input word, e.g. 1011")->required();
  c_eval->add_option("--schedule", e_schedule, "blocks like \"g1,g2|g3\"");
  c_eval->add_flag("--trace", e_trace, "print blocks and the full valuation");
  add_json(c_eval);

  // check-reversible
  auto* c_rev = app.add_subcommand("check-reversible", "test for a bijective circuit function");
  std::string r_file, r_method = "cross";
  c_rev->add_option("file", r_file, ".circ file")->required()->check(CLI::ExistingFile);
  c_rev->add_option("--method", r_method, "gates, table, or cross")
      ->check(CLI::IsMember({"gates", "table", "cross"}));
  add_json(c_rev);

  // simulate
  auto* c_sim = app.add_subcommand("simulate", "run a quantum circuit");
  std::string q_file, q_input, q_state_file, q_schedule;
  bool q_trace = false;
  c_sim->add_option("file", q_file, ".circ file")->required()->check(CLI::ExistingFile);
  c_sim->add_option("--input", q_input, "basis label like \"|00>\" or inline state");
  c_sim->add_option("--state-file", q_state_file, "file with \"index re im\" lines")
      ->check(CLI::ExistingFile);
  c_sim->add_option("--schedule", q_schedule, "blocks like \"g1,g2|g3\"");
  c_sim->add_flag("--trace", q_trace, "print the whole trajectory");
  add_json(c_sim);

  // equiv-orders
  auto* c_eq = app.add_subcommand("equiv-orders", "compare evaluation orders");
  std::string eq_file, eq_input, eq_state_file;
  int eq_trials = 16;
  std::uint64_t eq_seed = 0;
  c_eq->add_option("file", eq_file, ".circ file")->required()->check(CLI::ExistingFile);
  c_eq->add_option("--input", eq_input, "input word or state");
  c_eq->add_option("--state-file", eq_state_file, "file with \"index re im\" lines")
      ->check(CLI::ExistingFile);
  c_eq->add_option("--trials", eq_trials, "random schedules to try")
      ->check(CLI::Range(0, 100000));
  c_eq->add_option("--seed", eq_seed, "random seed");
  add_json(c_eq);

  // transpose-path
  auto* c_tp = app.add_subcommand("transpose-path", "adjacent-swap path between extensions");
  std::string tp_poset, tp_from, tp_to;
  c_tp->add_option("--poset", tp_poset, "poset file")->required()->check(CLI::ExistingFile);
  c_tp->add_option("--from", tp_from, "comma-separated order")->required();
  c_tp->add_option("--to", tp_to, "comma-separated order")->required();
  add_json(c_tp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*c_validate) return cmd_validate(v_file, json_mode);
    if (*c_info) return cmd_info(i_file, json_mode);
    if (*c_schedule) return cmd_schedule(s_file, s_strategy, json_mode);
    if (*c_slice) return cmd_slice(sl_file, sl_gates, json_mode);
    if (*c_decompose) return cmd_decompose(d_file, d_partition, d_out_dir, json_mode);
    if (*c_iso) return cmd_isomorphic(iso_a, iso_b, json_mode);
    if (*c_eval) return cmd_eval(e_file, e_input, e_schedule, e_trace, json_mode);
    if (*c_rev) return cmd_check_reversible(r_file, r_method, json_mode);
    if (*c_sim)
      return cmd_simulate(q_file, q_input, q_state_file, q_schedule, q_trace,
                          json_mode);
    if (*c_eq)
      return cmd_equiv_orders(eq_file, eq_input, eq_state_file, eq_trials,
                              eq_seed, json_mode);
    if (*c_tp) return cmd_transpose_path(tp_poset, tp_from, tp_to, json_mode);
  } catch (const ExitCode& e) {
    return e.code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
