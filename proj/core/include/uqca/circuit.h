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

#ifndef UQCA_CIRCUIT_H_
#define UQCA_CIRCUIT_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uqca {

// T is R(pi/4) = diag(1, e^{i pi/4}); CP is its controlled version.
// CNOT and CZ are composites that the parser expands into H and CP.
enum class GateKind { kH, kT, kCP, kSWAP, kID, kCNOT, kCZ };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_name(std::string_view name);
int gate_arity(GateKind kind);

struct GateOp {
  GateKind kind = GateKind::kID;
  std::array<int, 2> targets{0, -1};

  int arity() const { return gate_arity(kind); }
  bool touches(int q) const { return targets[0] == q || (arity() == 2 && targets[1] == q); }
  friend bool operator==(const GateOp &, const GateOp &) = default;
};

GateOp gate1(GateKind kind, int q);
GateOp gate2(GateKind kind, int a, int b);
std::string format_gate(const GateOp &g);

// Gates within a layer act on disjoint qubits.
struct CircuitIR {
  int qubits = 0;
  std::vector<std::vector<GateOp>> layers;

  size_t gate_count() const;
  // Throws RangeError or ParseError on out-of-range or overlapping targets.
  void validate() const;
  friend bool operator==(const CircuitIR &, const CircuitIR &) = default;
};

// CNOT a b -> H b, CP^4, H b; CZ a b -> CP^4. Other gates map to themselves.
std::vector<GateOp> expand_gate(const GateOp &g);
// Places gates into the earliest layer where all their targets are free.
CircuitIR layer_gates(int qubits, const std::vector<GateOp> &gates);
std::vector<GateOp> flatten_gates(const CircuitIR &c);

// DSL: `qubits <n>` then one gate per line; `#` starts a comment.
CircuitIR parse_circuit(std::string_view text);
std::string format_circuit(const CircuitIR &c);

// Reversed circuit with T^dag written as T^7 and CP^dag as CP^7.
CircuitIR adjoint_circuit(const CircuitIR &c);

}  // namespace uqca

#endif  // UQCA_CIRCUIT_H_
