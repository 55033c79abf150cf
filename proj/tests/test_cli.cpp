// Copyright 2026 The Circuitum Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end tests for the circuitum binary. Each case runs the real
// executable through a shell, captures stdout/stderr/exit code, and checks
// the exact text contract that scripts consuming the CLI rely on.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "circuitum/decompose.hpp"
#include "circuitum/quantum.hpp"
#include "circuitum/text.hpp"
#include "json.hpp"
#include "support/fixtures.hpp"

using namespace circuitum;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

const std::string& work_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/circuitum_cli_XXXXXX";
    const char* d = mkdtemp(tmpl);
    if (!d) throw std::runtime_error("mkdtemp failed");
    return std::string(d);
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes text under the suite's temp dir and returns the absolute path.
std::string fixture_file(const std::string& name, const std::string& text) {
  const std::string path = work_dir() + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
  return path;
}

// Runs the CLI with the given (already shell-quoted) argument string.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string out_path = work_dir() + "/cmd_out.txt";
  const std::string err_path = work_dir() + "/cmd_err.txt";
  std::string cmd;
  if (!env_prefix.empty()) cmd += "env " + env_prefix + " ";
  cmd += std::string("'") + CIRCUITUM_CLI_PATH + "' " + args;
  cmd += " > '" + out_path + "' 2> '" + err_path + "'";
  int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string q(const std::string& s) { return "'" + s + "'"; }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate accepts a well formed document") {
  std::string f = fixture_file("syntactic.circ", support::syntactic_circ_text());
  RunResult r = run_cli("validate " + q(f));
  CHECK(r.code == 0);
  CHECK(r.out == "valid\n");
  CHECK(r.err == "");
}

TEST_CASE("validate reports parser diagnostics on stdout") {
  std::string f = fixture_file("bad_parse.circ", "kind bogus\n");
  RunResult r = run_cli("validate " + q(f));
  CHECK(r.code == 1);
  CHECK(r.out ==
        f + ":1:6: SYNTAX: unknown kind 'bogus'\n" +
        f + ":1:1: SYNTAX: expected 'width <w>' or 'inputs <names...>'\n" +
        "invalid\n");
}

TEST_CASE("validate reports structural violations") {
  std::string f = fixture_file("bad_struct.circ",
                               "kind syntactic\ninputs a\noutputs x\n");
  RunResult r = run_cli("validate " + q(f));
  CHECK(r.code == 1);
  CHECK(contains(r.out, "ISOLATED_NODE node=in:a"));
  CHECK(contains(r.out, "ISOLATED_NODE node=out:x"));
  CHECK(contains(r.out, "invalid\n"));
}

TEST_CASE("validate flags missing payloads in typed documents") {
  std::string f = fixture_file("no_payload.circ",
                               "kind boolean\nwidth 1\ngate N lines 1\n");
  RunResult r = run_cli("validate " + q(f));
  CHECK(r.code == 1);
  CHECK(contains(r.out, "MISSING_FUNCTION"));
  CHECK(contains(r.out, "invalid\n"));
}

TEST_CASE("validate emits json when asked") {
  std::string good = fixture_file("syntactic.circ", support::syntactic_circ_text());
  RunResult r = run_cli("validate " + q(good) + " --json");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["command"] == "validate");
  CHECK(j["valid"] == true);
  CHECK(j["diagnostics"].empty());
  CHECK(j["violations"].empty());
  CHECK(j["error"].is_null());

  std::string bad = fixture_file("bad_parse.circ", "kind bogus\n");
  RunResult rb = run_cli("validate " + q(bad) + " --json");
  CHECK(rb.code == 1);
  json jb = json::parse(rb.out);
  CHECK(jb["valid"] == false);
  REQUIRE(jb["diagnostics"].size() == 2);
  CHECK(jb["diagnostics"][0]["code"] == "SYNTAX");
  CHECK(jb["diagnostics"][0]["line"] == 1);
  CHECK(jb["diagnostics"][0]["column"] == 6);
}

TEST_CASE("info prints circuit statistics") {
  std::string f = fixture_file("syntactic.circ", support::syntactic_circ_text());
  RunResult r = run_cli("info " + q(f));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "kind: syntactic\n"
        "inputs: 3\n"
        "outputs: 3\n"
        "gates: 2\n"
        "edges: 7\n"
        "depth: 2\n"
        "balanced: yes\n"
        "width: 3\n"
        "timeline 1: G1 G2\n"
        "timeline 2: G1\n"
        "timeline 3: G2\n");

  RunResult rj = run_cli("info " + q(f) + " --json");
  CHECK(rj.code == 0);
  json j = json::parse(rj.out);
  CHECK(j["kind"] == "syntactic");
  CHECK(j["width"] == 3);
  CHECK(j["depth"] == 2);
  CHECK(j["balanced"] == true);
  REQUIRE(j["timelines"].size() == 3);
  CHECK(j["timelines"][0]["gates"] == json::array({"G1", "G2"}));
}

TEST_CASE("info on a general document omits width") {
  std::string f = fixture_file("general.circ", support::general_circ_text());
  RunResult r = run_cli("info " + q(f));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "kind: syntactic\n"
        "inputs: 1\n"
        "outputs: 2\n"
        "gates: 1\n"
        "edges: 4\n"
        "depth: 1\n"
        "balanced: no\n");

  RunResult rj = run_cli("info " + q(f) + " --json");
  json j = json::parse(rj.out);
  CHECK(j["width"].is_null());
  CHECK(j["timelines"].is_null());
}

TEST_CASE("schedule layers with each strategy") {
  std::string diamond = fixture_file("diamond.circ",
                                     "kind syntactic\n"
                                     "width 2\n"
                                     "gate G1 lines 1,2\n"
                                     "gate G2 lines 1\n"
                                     "gate G3 lines 2\n"
                                     "gate G4 lines 1,2\n");
  CHECK(run_cli("schedule " + q(diamond)).out == "G1 | G2,G3 | G4\n");
  CHECK(run_cli("schedule " + q(diamond) + " --strategy linear").out ==
        "G1 | G2 | G3 | G4\n");

  std::string lazydist = fixture_file("lazydist.circ",
                                      "kind syntactic\n"
                                      "width 2\n"
                                      "gate A lines 1\n"
                                      "gate B lines 1\n"
                                      "gate C lines 1\n"
                                      "gate D lines 2\n");
  CHECK(run_cli("schedule " + q(lazydist) + " --strategy eager").out ==
        "A,D | B | C\n");
  CHECK(run_cli("schedule " + q(lazydist) + " --strategy lazy").out ==
        "A | B | C,D\n");

  RunResult bad = run_cli("schedule " + q(diamond) + " --strategy bogus");
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "usage error:"));
}

TEST_CASE("slice extracts a convex subcircuit") {
  std::string f = fixture_file("syntactic.circ", support::syntactic_circ_text());
  RunResult r = run_cli("slice " + q(f) + " --gates G1");
  CHECK(r.code == 0);
  CHECK(r.out == "kind syntactic\nwidth 3\ngate G1 lines 1,2\n");

  CHECK(run_cli("slice " + q(f) + " --gates G1,G2").out ==
        support::syntactic_circ_text());

  RunResult unknown = run_cli("slice " + q(f) + " --gates G9");
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.err, "UNKNOWN_GATE"));

  std::string chain = fixture_file("chain3.circ",
                                   "kind syntactic\n"
                                   "width 1\n"
                                   "gate A lines 1\n"
                                   "gate B lines 1\n"
                                   "gate C lines 1\n");
  RunResult nonconvex = run_cli("slice " + q(chain) + " --gates A,C");
  CHECK(nonconvex.code == 1);
  CHECK(contains(nonconvex.err, "NOT_CONVEX"));
}

TEST_CASE("decompose prints factors or writes files") {
  std::string f = fixture_file("syntactic.circ", support::syntactic_circ_text());
  RunResult r = run_cli("decompose " + q(f) + " --partition 'G1|G2'");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "# factor 1 of 2\n"
        "kind syntactic\nwidth 3\ngate G1 lines 1,2\n"
        "# factor 2 of 2\n"
        "kind syntactic\nwidth 3\ngate G2 lines 1,3\n");

  std::string dir = work_dir() + "/factors";
  RunResult rw = run_cli("decompose " + q(f) + " --partition 'G1|G2' --out-dir " +
                         q(dir));
  CHECK(rw.code == 0);
  std::string f1 = dir + "/syntactic_factor1.circ";
  std::string f2 = dir + "/syntactic_factor2.circ";
  CHECK(rw.out == f1 + "\n" + f2 + "\n");
  CHECK(slurp(f1) == "kind syntactic\nwidth 3\ngate G1 lines 1,2\n");
  CHECK(slurp(f2) == "kind syntactic\nwidth 3\ngate G2 lines 1,3\n");

  RunResult bad = run_cli("decompose " + q(f) + " --partition 'G2|G1'");
  CHECK(bad.code == 1);
  CHECK(contains(bad.err, "NOT_COHERENT"));
}

TEST_CASE("isomorphic reports a witness or exits nonzero") {
  std::string a = fixture_file("syntactic.circ", support::syntactic_circ_text());
  std::string b = fixture_file("renamed.circ",
                               "kind syntactic\n"
                               "width 3\n"
                               "gate H1 lines 1,2\n"
                               "gate H2 lines 1,3\n");
  RunResult r = run_cli("isomorphic " + q(a) + " " + q(b));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("isomorphic\n", 0) == 0);
  CHECK(contains(r.out, "node G1 -> H1\n"));
  CHECK(contains(r.out, "node G2 -> H2\n"));
  CHECK(contains(r.out, "node in1 -> in1\n"));
  CHECK(contains(r.out, "edge t1e0 -> t1e0\n"));

  std::string c = fixture_file("chain3.circ",
                               "kind syntactic\n"
                               "width 1\n"
                               "gate A lines 1\n"
                               "gate B lines 1\n"
                               "gate C lines 1\n");
  RunResult miss = run_cli("isomorphic " + q(a) + " " + q(c));
  CHECK(miss.code == 1);
  CHECK(miss.out == "not isomorphic\n");

  RunResult rj = run_cli("isomorphic " + q(a) + " " + q(b) + " --json");
  CHECK(rj.code == 0);
  json j = json::parse(rj.out);
  CHECK(j["isomorphic"] == true);
  CHECK(j["node_map"]["G1"] == "H1");
}

TEST_CASE("eval applies the boolean function") {
  std::string swap = fixture_file("swap.circ", support::swap_circ_text());
  RunResult r = run_cli("eval " + q(swap) + " --input 10");
  CHECK(r.code == 0);
  CHECK(r.out == "01\n");

  std::string cnot = fixture_file("cnot.circ", support::cnot_circ_text());
  CHECK(run_cli("eval " + q(cnot) + " --input 11").out == "10\n");

  CHECK(run_cli("eval " + q(swap) + " --input 10 --schedule S").out == "01\n");
}

TEST_CASE("eval trace lists blocks and the valuation") {
  std::string swap = fixture_file("swap.circ", support::swap_circ_text());
  RunResult r = run_cli("eval " + q(swap) + " --input 10 --trace");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "input 10\n"
        "block 1: S\n"
        "edge t1e0 = 1\n"
        "edge t1e1 = 0\n"
        "edge t2e0 = 0\n"
        "edge t2e1 = 1\n"
        "output 01\n");
}

TEST_CASE("eval rejects bad input") {
  std::string swap = fixture_file("swap.circ", support::swap_circ_text());
  RunResult missing = run_cli("eval " + q(swap));
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "usage error:"));

  RunResult junk = run_cli("eval " + q(swap) + " --input 2x");
  CHECK(junk.code == 1);
  CHECK(contains(junk.err, "error:"));

  RunResult ghost = run_cli("eval " + q(swap) + " --input 10 --schedule Z");
  CHECK(ghost.code == 1);
}

TEST_CASE("check-reversible verdicts and exit codes") {
  std::string cnot = fixture_file("cnot.circ", support::cnot_circ_text());
  RunResult r = run_cli("check-reversible " + q(cnot));
  CHECK(r.code == 0);
  CHECK(r.out == "reversible\n");
  CHECK(run_cli("check-reversible " + q(cnot) + " --method gates").code == 0);
  CHECK(run_cli("check-reversible " + q(cnot) + " --method table").code == 0);

  std::string andg = fixture_file("andembed.circ", support::and_embed_circ_text());
  RunResult ra = run_cli("check-reversible " + q(andg));
  CHECK(ra.code == 1);
  CHECK(ra.out == "not reversible\n");
}

TEST_CASE("simulate prints the final state deterministically") {
  std::string bell = fixture_file("bell.circ", support::bell_circ_text());

  ParseResult pr = parse(support::bell_circ_text());
  REQUIRE(pr.ok());
  QuantumCircuit qc = doc_to_quantum(*pr.doc);
  std::vector<StateVector> traj =
      simulate(qc, StateVector::basis(2, 0), layer_eager(qc.base()), 20);
  std::string expect_final = format_state(traj.back());
  std::string expect_trace;
  for (std::size_t k = 0; k < traj.size(); ++k)
    expect_trace += "step " + std::to_string(k) + "\n" + format_state(traj[k]);

  RunResult r1 = run_cli("simulate " + q(bell) + " --input '|00>'");
  CHECK(r1.code == 0);
  CHECK(r1.out == expect_final);
  RunResult r2 = run_cli("simulate " + q(bell) + " --input '|00>'");
  CHECK(r2.out == r1.out);

  RunResult rt = run_cli("simulate " + q(bell) + " --input '|00>' --trace");
  CHECK(rt.code == 0);
  CHECK(rt.out == expect_trace);
}

TEST_CASE("simulate input selection and normalization warning") {
  std::string bell = fixture_file("bell.circ", support::bell_circ_text());
  std::string state = fixture_file("state.txt", "0 1 0\n1 1 0\n");

  RunResult both = run_cli("simulate " + q(bell) + " --input '|00>' --state-file " +
                           q(state));
  CHECK(both.code == 2);
  CHECK(contains(both.err, "usage error:"));

  RunResult neither = run_cli("simulate " + q(bell));
  CHECK(neither.code == 2);

  RunResult warn = run_cli("simulate " + q(bell) + " --state-file " + q(state));
  CHECK(warn.code == 0);
  CHECK(contains(warn.err, "not normalized"));
}

TEST_CASE("simulate honors the width cap environment variable") {
  std::string bell = fixture_file("bell.circ", support::bell_circ_text());
  RunResult capped = run_cli("simulate " + q(bell) + " --input '|00>'",
                             "CIRCUITUM_WIDTH_CAP=1");
  CHECK(capped.code == 1);
  CHECK(contains(capped.err, "WIDTH_TOO_LARGE"));

  RunResult junk = run_cli("simulate " + q(bell) + " --input '|00>'",
                           "CIRCUITUM_WIDTH_CAP=abc");
  CHECK(junk.code == 0);
  CHECK(contains(junk.err, "ignoring non-numeric CIRCUITUM_WIDTH_CAP"));
}

TEST_CASE("equiv-orders agrees on well typed documents") {
  std::string bell = fixture_file("bell.circ", support::bell_circ_text());
  RunResult rq = run_cli("equiv-orders " + q(bell) + " --input '|00>'");
  CHECK(rq.code == 0);
  CHECK(rq.out == "trials 16\nmax deviation 0\nagree\n");

  RunResult rq5 = run_cli("equiv-orders " + q(bell) + " --input '|00>' --trials 5");
  CHECK(rq5.out == "trials 5\nmax deviation 0\nagree\n");

  std::string swap = fixture_file("swap.circ", support::swap_circ_text());
  RunResult rb = run_cli("equiv-orders " + q(swap) + " --input 10");
  CHECK(rb.code == 0);
  CHECK(rb.out == "trials 16\nmismatches 0\nagree\n");

  std::string syn = fixture_file("syntactic.circ", support::syntactic_circ_text());
  RunResult rs = run_cli("equiv-orders " + q(syn) + " --input 000");
  CHECK(rs.code == 1);
  CHECK(contains(rs.err, "KIND_MISMATCH"));
}

TEST_CASE("transpose-path walks between linear extensions") {
  std::string poset = fixture_file("poset.txt", support::poset_file_text());
  RunResult r = run_cli("transpose-path --poset " + q(poset) +
                        " --from a,b,c,d --to a,c,b,d");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "length 1\n"
        "swaps 2\n"
        "order a,b,c,d\n"
        "order a,c,b,d\n");

  RunResult same = run_cli("transpose-path --poset " + q(poset) +
                           " --from a,b,c,d --to a,b,c,d");
  CHECK(same.out == "length 0\nswaps\norder a,b,c,d\n");

  RunResult inco = run_cli("transpose-path --poset " + q(poset) +
                           " --from b,a,c,d --to a,b,c,d");
  CHECK(inco.code == 1);
  CHECK(contains(inco.err, "INCOHERENT_INPUT"));

  RunResult mism = run_cli("transpose-path --poset " + q(poset) +
                           " --from a,b,c,d --to a,c,b,e");
  CHECK(mism.code == 1);
  CHECK(contains(mism.err, "NOT_A_PERMUTATION"));

  std::string bad = fixture_file("bad_poset.txt", "elements a\nless a zzz\n");
  RunResult rb = run_cli("transpose-path --poset " + q(bad) +
                         " --from a --to a");
  CHECK(rb.code == 1);
  CHECK(contains(rb.err, "INVALID_POSET"));
}

TEST_CASE("usage errors exit with code 2") {
  RunResult none = run_cli("");
  CHECK(none.code == 2);
  CHECK(contains(none.err, "usage error:"));

  RunResult unknown = run_cli("frobnicate");
  CHECK(unknown.code == 2);

  RunResult missing = run_cli("validate /nonexistent/file.circ");
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "usage error:"));

  RunResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(contains(help.out, "circuitum"));
}

}  // TEST_SUITE
