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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "circuitum/boolean.hpp"
#include "circuitum/circuit.hpp"
#include "circuitum/decompose.hpp"

namespace circuitum {

using Amplitude = std::complex<double>;

/// Default numeric budgets. Matrices must satisfy the unitarity bound on
/// construction; simulation steps must keep the squared norm within the
/// norm-drift bound of the previous step.
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kStateTol = 1e-9;
inline constexpr double kNormDriftTol = 1e-9;

/// Square matrix over 2^r basis vectors, row-major; entry (row i, column j)
/// is the coefficient of basis vector i in the image of basis vector j.
class UnitaryMatrix {
 public:
  /// Validates the shape (dim = 2^r, r in 1..12) and unitarity: the maximal
  /// entry of (conjugate transpose times self minus identity) must stay
  /// within tol.
  static UnitaryMatrix from_entries(int dim, std::vector<Amplitude> entries,
                                    double tol = kUnitarityTol);
  /// Shape check only; for matrices that are unitary by construction
  /// (permutation lifts, products of unitaries). User input goes through
  /// from_entries.
  static UnitaryMatrix from_trusted_entries(int dim,
                                            std::vector<Amplitude> entries);
  /// H, T, X, CNOT, SWAP, TOFFOLI, FREDKIN (case-insensitive).
  static UnitaryMatrix builtin(const std::string& name);

  int dim() const { return dim_; }
  int arity() const { return arity_; }
  const Amplitude& at(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * dim_ + col];
  }

 private:
  UnitaryMatrix(int dim, int arity, std::vector<Amplitude> entries)
      : dim_(dim), arity_(arity), entries_(std::move(entries)) {}

  int dim_;
  int arity_;
  std::vector<Amplitude> entries_;
};

/// Matrix product a*b (apply b first).
UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// The unique unitary extension |x> -> |f(x)> of a permutation table.
UnitaryMatrix permutation_lift(const BooleanFunction& f);

/// 2^w amplitudes indexed by width-w bit words under the shared convention:
/// word position 1 (timeline 1) is the most significant index bit.
class StateVector {
 public:
  /// All-zero amplitude vector of the given width (0..24).
  explicit StateVector(int width);
  static StateVector basis(int width, std::uint32_t index);

  int width() const { return width_; }
  std::uint32_t dim() const {
    return std::uint32_t{1} << width_;
  }
  const Amplitude& amp(std::uint32_t index) const { return amps_[index]; }
  void set_amp(std::uint32_t index, Amplitude value) { amps_[index] = value; }
  const std::vector<Amplitude>& amps() const { return amps_; }

  double norm2() const;
  bool is_normalized(double tol = kStateTol) const;
  bool finite() const;

 private:
  int width_;
  std::vector<Amplitude> amps_;
};

/// Max amplitude deviation within tol; the global phase counts, no ray
/// identification is applied.
bool states_equal(const StateVector& a, const StateVector& b, double tol);

/// Applies `u` to the qubits listed in `active` (ascending 1-based
/// timelines), leaving all others untouched: the active bits of each basis
/// word, read in ascending timeline order, form the sub-word fed to `u`.
/// In-place gather/apply/scatter; no 2^w matrix is built.
void apply_lifted(const UnitaryMatrix& u, const std::vector<int>& active,
                  StateVector& state);

/// The same operator as an explicit 2^width matrix, for cross-checks and
/// small instances (width capped at 12).
UnitaryMatrix lift_matrix(const UnitaryMatrix& u, const std::vector<int>& active,
                          int width);

/// Balanced timeline-carrying circuit with a unitary per gate, the matrix
/// dimension matching 2^(gate arity).
class QuantumCircuit {
 public:
  const Circuit& base() const { return base_; }
  const UnitaryMatrix& op(const NodeId& gate) const;
  int width() const { return base_.width(); }

 private:
  friend QuantumCircuit attach_quantum(
      const Circuit&, const std::map<NodeId, UnitaryMatrix>&);
  QuantumCircuit() = default;

  Circuit base_;
  std::map<NodeId, UnitaryMatrix> ops_;
};

QuantumCircuit attach_quantum(const Circuit& c,
                              const std::map<NodeId, UnitaryMatrix>& specs);

/// Executes one antichain: its gates touch disjoint qubits, so their lifted
/// operators commute and are applied in lexicographic gate order.
void apply_antichain(const QuantumCircuit& qc, const GateSet& x,
                     StateVector& state);

/// The antichain's combined operator as an explicit matrix (width capped).
UnitaryMatrix antichain_matrix(const QuantumCircuit& qc, const GateSet& x,
                               int max_width = 10);

/// State trajectory Psi_0..Psi_T: Psi_0 is the input, each step applies one
/// block of the schedule, which must be a coherent partition into
/// antichains. Every step's squared norm is checked against the previous
/// one within the norm-drift budget.
std::vector<StateVector> simulate(const QuantumCircuit& qc,
                                  const StateVector& input,
                                  const CoherentPartition& p,
                                  int width_cap = 20);

/// Parses either a basis label "|0110>" or lines of "index re im" entries
/// (missing indices are zero; blank and '#' comment lines are skipped).
StateVector parse_state(const std::string& text, int width);

/// Nonzero entries as "index re im" lines with 17 significant digits.
std::string format_state(const StateVector& s);

/// "|0110>" for a given basis index.
std::string basis_label(std::uint32_t index, int width);

}  // namespace circuitum
