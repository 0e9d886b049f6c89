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

#include "uqca/oracle.h"

#include <algorithm>
#include <cmath>

#include "uqca/error.h"

namespace uqca {

DenseMatrix DenseMatrix::identity(size_t dim) {
  DenseMatrix m(dim);
  for (size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix &o) const {
  DenseMatrix m(dim_);
  for (size_t r = 0; r < dim_; ++r) {
    for (size_t k = 0; k < dim_; ++k) {
      Amplitude a = at(r, k);
      if (a == Amplitude(0)) continue;
      for (size_t c = 0; c < dim_; ++c) m.at(r, c) += a * o.at(k, c);
    }
  }
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(dim_);
  for (size_t r = 0; r < dim_; ++r) {
    for (size_t c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
  }
  return m;
}

DenseMatrix DenseMatrix::kron(const DenseMatrix &o) const {
  DenseMatrix m(dim_ * o.dim_);
  for (size_t r = 0; r < dim_; ++r) {
    for (size_t c = 0; c < dim_; ++c) {
      for (size_t i = 0; i < o.dim_; ++i) {
        for (size_t j = 0; j < o.dim_; ++j) {
          m.at(r * o.dim_ + i, c * o.dim_ + j) = at(r, c) * o.at(i, j);
        }
      }
    }
  }
  return m;
}

double DenseMatrix::max_abs_diff(const DenseMatrix &o) const {
  double worst = 0;
  for (size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - o.data_[i]));
  return worst;
}

bool DenseMatrix::is_unitary(double tol) const {
  return ((*this).adjoint() * (*this)).max_abs_diff(identity(dim_)) <= tol;
}

StateVector::StateVector(int qubits) : StateVector(basis(qubits, 0)) {}

StateVector::StateVector(int qubits, std::vector<Amplitude> amps)
    : qubits_(qubits), amps_(std::move(amps)) {
  if (amps_.size() != (size_t{1} << qubits)) throw RangeError("state size mismatch");
}

StateVector StateVector::basis(int qubits, uint64_t index) {
  if (qubits < 0 || qubits > kMaxOracleQubits) {
    throw RangeError("oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
  }
  std::vector<Amplitude> amps(size_t{1} << qubits);
  if (index >= amps.size()) throw RangeError("basis index out of range");
  amps[index] = 1.0;
  return StateVector(qubits, std::move(amps));
}

StateVector StateVector::random(int qubits, std::mt19937_64 &rng) {
  StateVector s = basis(qubits, 0);
  std::normal_distribution<double> gauss;
  double n = 0;
  for (auto &a : s.amps_) {
    a = {gauss(rng), gauss(rng)};
    n += std::norm(a);
  }
  for (auto &a : s.amps_) a /= std::sqrt(n);
  return s;
}

StateVector StateVector::random_product(int qubits, std::mt19937_64 &rng) {
  std::vector<StateVector> singles;
  for (int q = 0; q < qubits; ++q) singles.push_back(random(1, rng));
  StateVector s = basis(qubits, 0);
  for (size_t i = 0; i < s.size(); ++i) {
    Amplitude a = 1.0;
    for (int q = 0; q < qubits; ++q) a *= singles[q][(i >> (qubits - 1 - q)) & 1];
    s.amps_[i] = a;
  }
  return s;
}

double StateVector::norm() const {
  double n = 0;
  for (const auto &a : amps_) n += std::norm(a);
  return std::sqrt(n);
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
  if (a.size() != b.size()) throw RangeError("state size mismatch");
  Amplitude s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double state_fidelity(const StateVector &a, const StateVector &b) {
  return std::abs(inner_product(a, b));
}

DenseMatrix gate_matrix(GateKind kind) {
  switch (kind) {
    case GateKind::kH: {
      DenseMatrix m(2);
      m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = kInvSqrt2;
      m.at(1, 1) = -kInvSqrt2;
      return m;
    }
    case GateKind::kT: {
      DenseMatrix m = DenseMatrix::identity(2);
      m.at(1, 1) = kEighthTurn;
      return m;
    }
    case GateKind::kID:
      return DenseMatrix::identity(2);
    case GateKind::kCP: {
      DenseMatrix m = DenseMatrix::identity(4);
      m.at(3, 3) = kEighthTurn;
      return m;
    }
    case GateKind::kCZ: {
      DenseMatrix m = DenseMatrix::identity(4);
      m.at(3, 3) = -1.0;
      return m;
    }
    case GateKind::kSWAP: {
      DenseMatrix m(4);
      m.at(0, 0) = m.at(1, 2) = m.at(2, 1) = m.at(3, 3) = 1.0;
      return m;
    }
    case GateKind::kCNOT: {
      DenseMatrix m(4);
      m.at(0, 0) = m.at(1, 1) = m.at(2, 3) = m.at(3, 2) = 1.0;
      return m;
    }
  }
  return DenseMatrix();
}

DenseMatrix cnot_expansion_matrix() {
  DenseMatrix ih = DenseMatrix::identity(2).kron(gate_matrix(GateKind::kH));
  DenseMatrix cp = gate_matrix(GateKind::kCP);
  return ih * cp * cp * cp * cp * ih;
}

StateVector apply_gate(const GateOp &g, const StateVector &s) {
  int k = s.qubits();
  for (int i = 0; i < g.arity(); ++i) {
    if (g.targets[i] < 0 || g.targets[i] >= k) throw RangeError("gate target out of range");
  }
  StateVector out = s;
  if (g.kind == GateKind::kCNOT || g.kind == GateKind::kCZ) {
    for (const auto &e : expand_gate(g)) out = apply_gate(e, out);
    return out;
  }
  DenseMatrix m = gate_matrix(g.kind);
  if (g.arity() == 1) {
    size_t bit = size_t{1} << (k - 1 - g.targets[0]);
    for (size_t i = 0; i < s.size(); ++i) {
      if (i & bit) continue;
      Amplitude a0 = s[i], a1 = s[i | bit];
      out[i] = m.at(0, 0) * a0 + m.at(0, 1) * a1;
      out[i | bit] = m.at(1, 0) * a0 + m.at(1, 1) * a1;
    }
    return out;
  }
  size_t hi = size_t{1} << (k - 1 - g.targets[0]);
  size_t lo = size_t{1} << (k - 1 - g.targets[1]);
  for (size_t i = 0; i < s.size(); ++i) {
    if (i & (hi | lo)) continue;
    size_t idx[4] = {i, i | lo, i | hi, i | hi | lo};
    for (int r = 0; r < 4; ++r) {
      Amplitude v = 0;
      for (int c = 0; c < 4; ++c) v += m.at(r, c) * s[idx[c]];
      out[idx[r]] = v;
    }
  }
  return out;
}

StateVector apply_circuit(const CircuitIR &c, const StateVector &s) {
  if (c.qubits > kMaxOracleQubits) {
    throw RangeError("oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
  }
  if (s.qubits() != c.qubits) throw RangeError("state and circuit qubit counts differ");
  c.validate();
  StateVector out = s;
  for (const auto &layer : c.layers) {
    for (const auto &g : layer) out = apply_gate(g, out);
  }
  return out;
}

DenseMatrix circuit_unitary(const CircuitIR &c) {
  size_t dim = size_t{1} << c.qubits;
  DenseMatrix u(dim);
  for (size_t col = 0; col < dim; ++col) {
    StateVector s = apply_circuit(c, StateVector::basis(c.qubits, col));
    for (size_t r = 0; r < dim; ++r) u.at(r, col) = s[r];
  }
  return u;
}

double phase_adjusted_distance(const DenseMatrix &a, const DenseMatrix &b) {
  if (a.dim() != b.dim()) throw RangeError("matrix dimensions differ");
  Amplitude overlap = 0;
  for (size_t r = 0; r < a.dim(); ++r) {
    for (size_t c = 0; c < a.dim(); ++c) overlap += std::conj(b.at(r, c)) * a.at(r, c);
  }
  Amplitude phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Amplitude(1.0);
  double worst = 0;
  for (size_t r = 0; r < a.dim(); ++r) {
    for (size_t c = 0; c < a.dim(); ++c) {
      worst = std::max(worst, std::abs(a.at(r, c) - phase * b.at(r, c)));
    }
  }
  return worst;
}

}  // namespace uqca
