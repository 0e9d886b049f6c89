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

#ifndef UQCA_INTRINSIC_H_
#define UQCA_INTRINSIC_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "uqca/circuit.h"
#include "uqca/compiler.h"
#include "uqca/evolution.h"
#include "uqca/lattice.h"
#include "uqca/oracle.h"

namespace uqca {

// A simulated automaton with one qubit per cell (0 quiescent) whose block
// unitary V acts on qubits 0..3 = NW, NE, SW, SE.
struct ReferencePQCA {
  CircuitIR v;
  DenseMatrix matrix;

  // Throws ConstructionError unless V is a 4-qubit unitary fixing |0000>.
  static ReferencePQCA from_circuit(const CircuitIR &v);
};

// Basis state of the simulated lattice: the cells holding 1, canonical order.
struct SimConfiguration {
  std::vector<Coord> ones;

  static SimConfiguration of(std::vector<Coord> cells);
  SimConfiguration translated(const Coord &delta) const;
  friend bool operator==(const SimConfiguration &, const SimConfiguration &) = default;
  friend bool operator<(const SimConfiguration &a, const SimConfiguration &b);
};

struct SimSuperposition {
  std::map<SimConfiguration, Amplitude> branches;
  Parity parity = Parity::kAligned;
  int64_t time = 0;

  double norm_squared() const;
  SimSuperposition translated(const Coord &delta) const;
};

Amplitude inner_product(const SimSuperposition &a, const SimSuperposition &b);
double fidelity(const SimSuperposition &a, const SimSuperposition &b);

SimSuperposition reference_step(const ReferencePQCA &p, const SimSuperposition &psi,
                                double prune_threshold = kDefaultPruneThreshold);
SimSuperposition reference_run(const ReferencePQCA &p, const SimSuperposition &psi, int steps);

struct SimRegion {
  Coord origin;  // south-west cell
  int width = 2;
  int height = 2;

  std::vector<Coord> cells() const;  // canonical order
};

// Lane bus coding of a finite simulated region. Each cell that can become
// non-quiescent within the simulated horizon owns one lane; before simulated
// step k the lanes are permuted by adjacent swaps so that the four cells of
// every block of that step sit on four consecutive lanes, where V is applied.
struct IsometricCoding {
  SimRegion region;
  Parity sim_parity = Parity::kAligned;
  int sim_steps = 0;
  int layers_per_step = 0;         // L
  int64_t steps_per_sim_step = 0;  // T = 24 L
  int permutation_layers = 0;
  int v_layers = 0;
  // lane_cells[k][lane]: simulated cell carried by `lane` after k simulated steps.
  std::vector<std::vector<Coord>> lane_cells;
  // Supercell extent on the universal lattice: lanes * 8 by layers * 14.
  int64_t supercell_width = 0;
  int64_t supercell_height = 0;
};

struct FlattenedPQCA {
  CompiledLayout layout;
  IsometricCoding coding;
  CircuitIR circuit;  // the lane-bus circuit before layout
};

inline constexpr int kMaxFlattenRegionCells = 9;
inline constexpr int kMaxFlattenLanes = 64;

FlattenedPQCA flatten_pqca(const ReferencePQCA &p, const SimRegion &region, int sim_steps,
                           Parity sim_parity = Parity::kAligned);

Superposition encode_sim(const FlattenedPQCA &f, const SimSuperposition &psi);

struct SimDecoded {
  SimSuperposition state;
  Superposition residue;
  double factor_error = 0;
};
// Decodes at the simulated step boundary given by psi.time() / T.
SimDecoded decode_sim(const FlattenedPQCA &f, const Superposition &psi);

struct DirectSimulationOptions {
  int random_states = 4;
  uint64_t seed = 1;
  StepOptions step;
};

struct DirectSimulationReport {
  int steps = 0;
  int states_tested = 0;
  double min_fidelity = 1;
  double min_residue_fidelity = 1;
  double max_factor_error = 0;
  std::string worst_state;
  std::vector<std::string> failures;
  bool ok(double tolerance) const {
    return failures.empty() && min_fidelity >= 1 - tolerance &&
           min_residue_fidelity >= 1 - 1e-6;
  }
};

// Test states: every basis state with at most two 1-cells in the region, plus
// `random_states` random superpositions over the region.
std::vector<SimSuperposition> direct_simulation_states(const SimRegion &region, int random_states,
                                                       uint64_t seed,
                                                       Parity parity = Parity::kAligned);

DirectSimulationReport check_direct_simulation(const FlattenedPQCA &f, const ReferencePQCA &p,
                                               int steps,
                                               const DirectSimulationOptions &options = {});

std::string format_coding(const IsometricCoding &c);
std::string format_sim_state(const SimSuperposition &s);

}  // namespace uqca

#endif  // UQCA_INTRINSIC_H_
