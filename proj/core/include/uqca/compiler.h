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

#ifndef UQCA_COMPILER_H_
#define UQCA_COMPILER_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "uqca/circuit.h"
#include "uqca/evolution.h"
#include "uqca/lattice.h"
#include "uqca/oracle.h"

namespace uqca {

// Barrier and ancilla machinery for a layered circuit. Qubit i travels along
// lane i; layer k's tile on lane j sits at (8j + 14k, 14k).
struct CompiledLayout {
  int qubits = 0;
  int layers = 0;
  int64_t total_steps = 0;
  Parity entry_parity = Parity::kAligned;
  Configuration machinery;
  std::vector<Coord> in_ports;
  std::vector<Coord> out_ports;
  CircuitIR routed;

  // Port of `qubit` after `boundary` layers.
  Coord port(int qubit, int boundary) const;
};

// Replaces every non-adjacent two-qubit gate with adjacent swaps in, the gate
// on neighbouring lanes, and the same swaps out. Layers whose gates are all
// adjacent are kept as they are.
CircuitIR route_circuit(const CircuitIR &c);
CompiledLayout layout_circuit(const CircuitIR &c);

Superposition encode_basis(const CompiledLayout &l, uint64_t basis);
Superposition encode_inputs(const CompiledLayout &l, const StateVector &s);
Superposition encode_sparse(const CompiledLayout &l, const std::map<uint64_t, Amplitude> &amps);

struct DecodedState {
  int qubits = 0;
  std::map<uint64_t, Amplitude> amps;
  // Everything other than the port signals, as a normalized state.
  Superposition residue;
  // Weight not captured by the product of `amps` and `residue`.
  double factor_error = 0;

  StateVector dense() const;
};

// Reads the ports at the layer boundary given by psi.time(). With `strict`,
// any off-port signal or unrestored machinery raises LeakageError.
DecodedState decode_lanes(const CompiledLayout &l, const Superposition &psi, bool strict = true);
StateVector decode_outputs(const CompiledLayout &l, const Superposition &psi);

// Sidecar text: `inport i x y`, `outport i x y`, `steps N`, `parity P`.
std::string format_ports(const CompiledLayout &l);
CompiledLayout parse_ports(std::string_view text, const Configuration &machinery);

}  // namespace uqca

#endif  // UQCA_COMPILER_H_
