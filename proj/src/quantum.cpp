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

#include "circuitum/quantum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace circuitum {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(int x) {
  int r = 0;
  while ((1 << r) < x) ++r;
  return r;
}

void check_shape(int dim, const std::vector<Amplitude>& entries) {
  if (!is_power_of_two(dim) || dim < 2 || dim > (1 << 12))
    throw Error(Err::DIM_MISMATCH,
                "matrix dimension " + std::to_string(dim) +
                    " is not a power of two in 2..4096");
  if (entries.size() != static_cast<std::size_t>(dim) * dim)
    throw Error(Err::DIM_MISMATCH,
                std::to_string(dim) + "-dimensional matrix needs " +
                    std::to_string(static_cast<std::size_t>(dim) * dim) +
                    " entries, got " + std::to_string(entries.size()));
  for (const Amplitude& a : entries)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw Error(Err::DIM_MISMATCH, "matrix entry is not finite");
}

}  // namespace

UnitaryMatrix UnitaryMatrix::from_entries(int dim,
                                          std::vector<Amplitude> entries,
                                          double tol) {
  check_shape(dim, entries);
  // Max-entry deviation of (U* U - I).
  double deviation = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Amplitude sum = 0.0;
      for (int k = 0; k < dim; ++k)
        sum += std::conj(entries[static_cast<std::size_t>(k) * dim + i]) *
               entries[static_cast<std::size_t>(k) * dim + j];
      if (i == j) sum -= 1.0;
      deviation = std::max(deviation, std::abs(sum));
    }
  }
  if (deviation > tol) {
    std::ostringstream msg;
    msg << "matrix is not unitary: deviation " << deviation
        << " exceeds tolerance " << tol;
    throw Error(Err::NOT_UNITARY, msg.str());
  }
  return UnitaryMatrix(dim, log2_exact(dim), std::move(entries));
}

UnitaryMatrix UnitaryMatrix::from_trusted_entries(
    int dim, std::vector<Amplitude> entries) {
  check_shape(dim, entries);
  return UnitaryMatrix(dim, log2_exact(dim), std::move(entries));
}

UnitaryMatrix UnitaryMatrix::builtin(const std::string& name) {
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  if (key == "H") {
    const double s = 1.0 / std::sqrt(2.0);
    return from_trusted_entries(2, {s, s, s, -s});
  }
  if (key == "T") {
    const double c = std::cos(M_PI / 4.0);
    return from_trusted_entries(2, {1.0, 0.0, 0.0, Amplitude(c, c)});
  }
  // The remaining builtins are classical permutations.
  return permutation_lift(BooleanFunction::builtin(key));
}

UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim())
    throw Error(Err::DIM_MISMATCH,
                "cannot multiply matrices of dimensions " +
                    std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  const int dim = a.dim();
  std::vector<Amplitude> out(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const Amplitude aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < dim; ++j)
        out[static_cast<std::size_t>(i) * dim + j] += aik * b.at(k, j);
    }
  return UnitaryMatrix::from_trusted_entries(dim, std::move(out));
}

UnitaryMatrix permutation_lift(const BooleanFunction& f) {
  if (!f.is_permutation())
    throw Error(Err::NOT_A_PERMUTATION,
                "only permutation tables lift to unitaries");
  const int dim = 1 << f.arity_in();
  std::vector<Amplitude> entries(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int x = 0; x < dim; ++x)
    entries[static_cast<std::size_t>(f.apply_index(x)) * dim + x] = 1.0;
  return UnitaryMatrix::from_trusted_entries(dim, std::move(entries));
}

StateVector::StateVector(int width) : width_(width) {
  if (width < 0 || width > 24)
    throw Error(Err::WIDTH_TOO_LARGE,
                "state width " + std::to_string(width) +
                    " outside the supported 0..24");
  amps_.assign(std::size_t{1} << width, 0.0);
}

StateVector StateVector::basis(int width, std::uint32_t index) {
  StateVector s(width);
  if (index >= s.dim())
    throw Error(Err::BAD_STATE,
                "basis index " + std::to_string(index) +
                    " does not fit width " + std::to_string(width));
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm2() const {
  double sum = 0.0;
  for (const Amplitude& a : amps_) sum += std::norm(a);
  return sum;
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm2() - 1.0) <= tol;
}

bool StateVector::finite() const {
  for (const Amplitude& a : amps_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  return true;
}

bool states_equal(const StateVector& a, const StateVector& b, double tol) {
  if (a.width() != b.width())
    throw Error(Err::WIDTH_MISMATCH,
                "cannot compare states of widths " +
                    std::to_string(a.width()) + " and " +
                    std::to_string(b.width()));
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    if (std::abs(a.amp(i) - b.amp(i)) > tol) return false;
  return true;
}

namespace {

// Bit masks realizing the active-timeline sub-word: offsets[sub] is the OR
// of full-index bits that encode sub-word `sub`. Timeline t occupies index
// bit (w - t), so ascending timelines give sub-word bits MSB first.
std::vector<std::uint32_t> subword_offsets(const std::vector<int>& active,
                                           int width) {
  const int r = static_cast<int>(active.size());
  for (int i = 0; i < r; ++i) {
    if (active[i] < 1 || active[i] > width)
      throw Error(Err::BAD_TIMELINES,
                  "active timeline " + std::to_string(active[i]) +
                      " outside 1.." + std::to_string(width));
    if (i > 0 && active[i] <= active[i - 1])
      throw Error(Err::BAD_TIMELINES,
                  "active timelines must be strictly ascending");
  }
  std::vector<std::uint32_t> offsets(std::size_t{1} << r, 0);
  for (std::uint32_t sub = 0; sub < offsets.size(); ++sub)
    for (int i = 0; i < r; ++i)
      if ((sub >> (r - 1 - i)) & 1)
        offsets[sub] |= std::uint32_t{1} << (width - active[i]);
  return offsets;
}

}  // namespace

void apply_lifted(const UnitaryMatrix& u, const std::vector<int>& active,
                  StateVector& state) {
  const int w = state.width();
  if ((std::size_t{1} << active.size()) != static_cast<std::size_t>(u.dim()))
    throw Error(Err::BAD_TIMELINES,
                std::to_string(active.size()) +
                    " active timelines do not match a dimension-" +
                    std::to_string(u.dim()) + " operator");
  const std::vector<std::uint32_t> offsets = subword_offsets(active, w);
  std::uint32_t active_mask = 0;
  for (const std::uint32_t off : offsets) active_mask |= off;

  const std::uint32_t subdim = static_cast<std::uint32_t>(u.dim());
  std::vector<Amplitude> gathered(subdim), image(subdim);
  for (std::uint32_t base = 0; base < state.dim(); ++base) {
    if (base & active_mask) continue;
    for (std::uint32_t sub = 0; sub < subdim; ++sub)
      gathered[sub] = state.amp(base | offsets[sub]);
    for (std::uint32_t row = 0; row < subdim; ++row) {
      Amplitude sum = 0.0;
      for (std::uint32_t col = 0; col < subdim; ++col)
        sum += u.at(row, col) * gathered[col];
      image[row] = sum;
    }
    for (std::uint32_t sub = 0; sub < subdim; ++sub)
      state.set_amp(base | offsets[sub], image[sub]);
  }
}

UnitaryMatrix lift_matrix(const UnitaryMatrix& u, const std::vector<int>& active,
                          int width) {
  if (width < 1 || width > 12)
    throw Error(Err::WIDTH_TOO_LARGE,
                "explicit lifted matrices support widths 1..12");
  if ((std::size_t{1} << active.size()) != static_cast<std::size_t>(u.dim()))
    throw Error(Err::BAD_TIMELINES,
                std::to_string(active.size()) +
                    " active timelines do not match a dimension-" +
                    std::to_string(u.dim()) + " operator");
  const std::vector<std::uint32_t> offsets = subword_offsets(active, width);
  std::uint32_t active_mask = 0;
  for (const std::uint32_t off : offsets) active_mask |= off;

  const std::uint32_t dim = std::uint32_t{1} << width;
  const std::uint32_t subdim = static_cast<std::uint32_t>(u.dim());
  std::vector<Amplitude> entries(static_cast<std::size_t>(dim) * dim, 0.0);
  for (std::uint32_t col = 0; col < dim; ++col) {
    const std::uint32_t base = col & ~active_mask;
    std::uint32_t col_sub = 0;
    for (std::uint32_t sub = 0; sub < subdim; ++sub)
      if ((col & active_mask) == offsets[sub]) col_sub = sub;
    for (std::uint32_t row_sub = 0; row_sub < subdim; ++row_sub)
      entries[static_cast<std::size_t>(base | offsets[row_sub]) * dim + col] =
          u.at(row_sub, col_sub);
  }
  return UnitaryMatrix::from_trusted_entries(dim, std::move(entries));
}

const UnitaryMatrix& QuantumCircuit::op(const NodeId& gate) const {
  auto it = ops_.find(gate);
  if (it == ops_.end())
    throw Error(Err::UNKNOWN_GATE, "no gate named " + gate);
  return it->second;
}

QuantumCircuit attach_quantum(const Circuit& c,
                              const std::map<NodeId, UnitaryMatrix>& specs) {
  if (!c.is_balanced())
    throw Error(Err::NOT_BALANCED, "quantum circuits must be balanced");
  if (!c.has_timelines())
    throw Error(Err::NO_TIMELINES, "quantum circuits need a timeline map");
  for (const auto& [gid, op] : specs) {
    (void)op;
    if (!c.is_gate(gid))
      throw Error(Err::UNKNOWN_GATE, gid + " is not a gate of the circuit");
  }
  QuantumCircuit qc;
  qc.base_ = c;
  for (const auto& gid : c.gates()) {
    auto it = specs.find(gid);
    if (it == specs.end())
      throw Error(Err::MISSING_FUNCTION,
                  "gate " + gid + " has no unitary operator");
    const int arity = c.gate_arity(gid);
    if (it->second.dim() != (1 << arity))
      throw Error(Err::DIM_MISMATCH,
                  "gate " + gid + " of arity " + std::to_string(arity) +
                      " needs a dimension-" + std::to_string(1 << arity) +
                      " operator, got " + std::to_string(it->second.dim()));
    qc.ops_.emplace(gid, it->second);
  }
  return qc;
}

void apply_antichain(const QuantumCircuit& qc, const GateSet& x,
                     StateVector& state) {
  if (!is_antichain(qc.base(), x))
    throw Error(Err::NOT_ANTICHAIN, "gate set is not an antichain");
  // Antichain gates touch disjoint qubits, so this order is immaterial.
  for (const auto& gid : x)
    apply_lifted(qc.op(gid), qc.base().active_timelines(gid), state);
}

UnitaryMatrix antichain_matrix(const QuantumCircuit& qc, const GateSet& x,
                               int max_width) {
  if (!is_antichain(qc.base(), x))
    throw Error(Err::NOT_ANTICHAIN, "gate set is not an antichain");
  const int w = qc.width();
  if (w > max_width)
    throw Error(Err::WIDTH_TOO_LARGE,
                "width " + std::to_string(w) +
                    " exceeds the explicit-matrix cap of " +
                    std::to_string(max_width));
  const std::uint32_t dim = std::uint32_t{1} << w;
  std::vector<Amplitude> identity(static_cast<std::size_t>(dim) * dim, 0.0);
  for (std::uint32_t i = 0; i < dim; ++i)
    identity[static_cast<std::size_t>(i) * dim + i] = 1.0;
  UnitaryMatrix out = UnitaryMatrix::from_trusted_entries(
      static_cast<int>(dim), std::move(identity));
  for (const auto& gid : x)
    out = multiply(lift_matrix(qc.op(gid), qc.base().active_timelines(gid), w),
                   out);
  return out;
}

std::vector<StateVector> simulate(const QuantumCircuit& qc,
                                  const StateVector& input,
                                  const CoherentPartition& p, int width_cap) {
  const int w = qc.width();
  if (input.width() != w)
    throw Error(Err::WIDTH_MISMATCH,
                "circuit of width " + std::to_string(w) +
                    " cannot consume a width-" +
                    std::to_string(input.width()) + " state");
  if (w > width_cap)
    throw Error(Err::WIDTH_TOO_LARGE,
                "width " + std::to_string(w) +
                    " exceeds the simulation cap of " +
                    std::to_string(width_cap));
  if (!input.finite())
    throw Error(Err::BAD_STATE, "input state has non-finite amplitudes");
  const PartitionCheck check = is_coherent_partition(qc.base(), p);
  if (!check) throw Error(Err::NOT_COHERENT, check.reason);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!is_antichain(qc.base(), p[i]))
      throw Error(Err::NOT_ANTICHAIN_BLOCK,
                  "schedule block " + std::to_string(i + 1) +
                      " is not an antichain");

  std::vector<StateVector> trajectory{input};
  double prev_norm2 = input.norm2();
  for (const auto& block : p) {
    StateVector next = trajectory.back();
    for (const auto& gid : block)
      apply_lifted(qc.op(gid), qc.base().active_timelines(gid), next);
    const double norm2 = next.norm2();
    if (std::abs(norm2 - prev_norm2) >
        kNormDriftTol * std::max(1.0, prev_norm2))
      throw Error(Err::CROSS_CHECK_FAILED,
                  "unitary step drifted the squared norm by " +
                      std::to_string(norm2 - prev_norm2));
    prev_norm2 = norm2;
    trajectory.push_back(std::move(next));
  }
  return trajectory;
}

StateVector parse_state(const std::string& text, int width) {
  // Basis form first: |bits> with exactly `width` bits.
  std::string trimmed = text;
  auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  trimmed.erase(trimmed.begin(),
                std::find_if(trimmed.begin(), trimmed.end(), not_space));
  trimmed.erase(
      std::find_if(trimmed.rbegin(), trimmed.rend(), not_space).base(),
      trimmed.end());
  if (!trimmed.empty() && trimmed.front() == '|') {
    if (trimmed.back() != '>')
      throw Error(Err::BAD_STATE, "basis label misses the closing '>'");
    const std::string bits = trimmed.substr(1, trimmed.size() - 2);
    if (static_cast<int>(bits.size()) != width)
      throw Error(Err::BAD_STATE,
                  "basis label carries " + std::to_string(bits.size()) +
                      " bits, circuit width is " + std::to_string(width));
    std::uint32_t index = 0;
    for (const char ch : bits) {
      if (ch != '0' && ch != '1')
        throw Error(Err::BAD_STATE,
                    std::string("basis label contains '") + ch + "'");
      index = (index << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return StateVector::basis(width, index);
  }

  // Entry-list form: one "index re im" triple per line.
  StateVector s(width);
  std::set<std::uint32_t> seen;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;    // blank line
    if (first.front() == '#') continue;  // comment line
    std::uint64_t index;
    double re, im;
    std::istringstream head(first);
    if (!(head >> index) || !head.eof() || !(fields >> re >> im))
      throw Error(Err::BAD_STATE,
                  "line " + std::to_string(line_no) +
                      " is not an \"index re im\" entry");
    std::string extra;
    if (fields >> extra)
      throw Error(Err::BAD_STATE,
                  "line " + std::to_string(line_no) + " has trailing fields");
    if (index >= s.dim())
      throw Error(Err::BAD_STATE,
                  "index " + std::to_string(index) + " does not fit width " +
                      std::to_string(width));
    if (!seen.insert(static_cast<std::uint32_t>(index)).second)
      throw Error(Err::BAD_STATE,
                  "index " + std::to_string(index) + " appears twice");
    if (!std::isfinite(re) || !std::isfinite(im))
      throw Error(Err::BAD_STATE, "amplitude is not finite");
    s.set_amp(static_cast<std::uint32_t>(index), Amplitude(re, im));
  }
  return s;
}

std::string format_state(const StateVector& s) {
  std::ostringstream out;
  char buffer[64];
  for (std::uint32_t i = 0; i < s.dim(); ++i) {
    const Amplitude a = s.amp(i);
    if (a == 0.0) continue;
    std::snprintf(buffer, sizeof buffer, "%u ", i);
    out << buffer;
    std::snprintf(buffer, sizeof buffer, "%.17g", a.real());
    out << buffer << ' ';
    std::snprintf(buffer, sizeof buffer, "%.17g", a.imag());
    out << buffer << '\n';
  }
  return out.str();
}

std::string basis_label(std::uint32_t index, int width) {
  std::string label = "|";
  for (int t = 0; t < width; ++t)
    label += static_cast<char>('0' + ((index >> (width - 1 - t)) & 1));
  label += ">";
  return label;
}

}  // namespace circuitum
