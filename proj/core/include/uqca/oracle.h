// Copyright 2026 The uqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UQCA_ORACLE_H_
#define UQCA_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "uqca/circuit.h"
#include "uqca/scattering.h"

namespace uqca {

inline constexpr int kMaxOracleQubits = 12;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(size_t dim) : dim_(dim), data_(dim * dim) {}
  static DenseMatrix identity(size_t dim);

  size_t dim() const { return dim_; }
  Amplitude &at(size_t r, size_t c) { return data_[r * dim_ + c]; }
  const Amplitude &at(size_t r, size_t c) const { return data_[r * dim_ + c]; }

  DenseMatrix operator*(const DenseMatrix &o) const;
  DenseMatrix adjoint() const;
  // Kronecker product, `this` on the more significant qubits.
  DenseMatrix kron(const DenseMatrix &o) const;
  double max_abs_diff(const DenseMatrix &o) const;
  bool is_unitary(double tol) const;

 private:
  size_t dim_ = 0;
  std::vector<Amplitude> data_;
};

// Dense state over k qubits. Qubit 0 is the most significant bit of the index.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int qubits);  // |0...0>
  StateVector(int qubits, std::vector<Amplitude> amps);
  static StateVector basis(int qubits, uint64_t index);
  static StateVector random(int qubits, std::mt19937_64 &rng);
  static StateVector random_product(int qubits, std::mt19937_64 &rng);

  int qubits() const { return qubits_; }
  size_t size() const { return amps_.size(); }
  Amplitude &operator[](size_t i) { return amps_[i]; }
  const Amplitude &operator[](size_t i) const { return amps_[i]; }
  const std::vector<Amplitude> &amplitudes() const { return amps_; }
  double norm() const;

 private:
  int qubits_ = 0;
  std::vector<Amplitude> amps_;
};

Amplitude inner_product(const StateVector &a, const StateVector &b);
double state_fidelity(const StateVector &a, const StateVector &b);

// 2x2 for one-qubit kinds, 4x4 for two-qubit kinds with the first target as
// the more significant bit.
DenseMatrix gate_matrix(GateKind kind);
DenseMatrix cnot_expansion_matrix();

StateVector apply_gate(const GateOp &g, const StateVector &s);
StateVector apply_circuit(const CircuitIR &c, const StateVector &s);
DenseMatrix circuit_unitary(const CircuitIR &c);

// max_ij |a_ij - e^{i theta} b_ij| for the overlap-maximizing theta.
double phase_adjusted_distance(const DenseMatrix &a, const DenseMatrix &b);

}  // namespace uqca

#endif  // UQCA_ORACLE_H_
