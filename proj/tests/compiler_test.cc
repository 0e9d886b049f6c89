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

#include "uqca/compiler.h"

#include <deque>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "uqca/error.h"
#include "uqca/tiles.h"

namespace uqca {
namespace {

constexpr CellState S0 = CellState::kSig0;
constexpr CellState S1 = CellState::kSig1;

// Fewest adjacent transpositions that bring qubits a and b next to each other.
int min_swaps_to_adjacent(int n, int a, int b) {
  std::vector<int> start(n);
  for (int i = 0; i < n; ++i) start[i] = i;
  std::set<std::vector<int>> seen{start};
  std::deque<std::pair<std::vector<int>, int>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [perm, d] = queue.front();
    queue.pop_front();
    for (int i = 0; i + 1 < n; ++i) {
      if ((perm[i] == a && perm[i + 1] == b) || (perm[i] == b && perm[i + 1] == a)) return d;
    }
    for (int i = 0; i + 1 < n; ++i) {
      auto next = perm;
      std::swap(next[i], next[i + 1]);
      if (seen.insert(next).second) queue.push_back({next, d + 1});
    }
  }
  return -1;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

StateVector simulate(const CompiledLayout &l, const StateVector &in) {
  return decode_outputs(l, run(encode_inputs(l, in), l.total_steps));
}

TEST(compiler, routes_far_controlled_phase) {
  CircuitIR r = route_circuit(parse_circuit("qubits 3\nCP 0 2\n"));
  ASSERT_EQ(r.layers.size(), 3u);
  EXPECT_EQ(r.layers[0], (std::vector<GateOp>{gate2(GateKind::kSWAP, 1, 2)}));
  EXPECT_EQ(r.layers[1], (std::vector<GateOp>{gate2(GateKind::kCP, 0, 1)}));
  EXPECT_EQ(r.layers[2], (std::vector<GateOp>{gate2(GateKind::kSWAP, 1, 2)}));
}

TEST(compiler, routing_uses_minimal_swaps_and_preserves_unitary) {
  for (int n = 2; n <= 5; ++n) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        CircuitIR c = layer_gates(n, {gate2(GateKind::kCP, a, b)});
        CircuitIR r = route_circuit(c);
        int swaps = 0;
        for (const auto &layer : r.layers) {
          for (const auto &g : layer) {
            EXPECT_EQ(std::abs(g.targets[0] - g.targets[1]) <= 1 || g.arity() == 1, true);
            swaps += g.kind == GateKind::kSWAP;
          }
        }
        EXPECT_EQ(swaps, 2 * min_swaps_to_adjacent(n, a, b)) << n << " " << a << " " << b;
        EXPECT_LE(circuit_unitary(r).max_abs_diff(circuit_unitary(c)), 1e-12);
      }
    }
  }
}

TEST(compiler, adjacent_layers_are_kept) {
  CircuitIR c = parse_circuit("qubits 4\nH 0\nCP 1 2\nT 3\nSWAP 0 1\n");
  EXPECT_EQ(route_circuit(c), c);
}

TEST(compiler, identity_layout_is_the_identity_tile) {
  CompiledLayout l = layout_circuit(parse_circuit("qubits 1\nID 0\n"));
  EXPECT_EQ(l.layers, 1);
  EXPECT_EQ(l.total_steps, 24);
  EXPECT_EQ(l.machinery, builtin_tile("identity").machinery());
  EXPECT_EQ(l.port(0, 0), (Coord{4, 0}));
  EXPECT_EQ(l.port(0, 1), (Coord{18, 14}));
}

TEST(compiler, empty_circuit_passes_inputs_through) {
  CompiledLayout l = layout_circuit(parse_circuit("qubits 2\n"));
  EXPECT_EQ(l.layers, 0);
  EXPECT_EQ(l.total_steps, 0);
  Superposition psi = encode_basis(l, 2);
  DecodedState d = decode_lanes(l, psi);
  ASSERT_EQ(d.amps.size(), 1u);
  EXPECT_EQ(d.amps.begin()->first, 2u);
}

TEST(compiler, encode_places_signals_on_in_ports) {
  CompiledLayout l = layout_circuit(parse_circuit("qubits 2\nH 0\nCNOT 0 1\n"));
  EXPECT_EQ(l.layers, 6);
  EXPECT_EQ(l.total_steps, 144);
  Superposition psi = encode_basis(l, 2);
  ASSERT_EQ(psi.branch_count(), 1u);
  const Configuration &c = psi.branches().begin()->first;
  EXPECT_EQ(c.get({4, 0}), S1);
  EXPECT_EQ(c.get({12, 0}), S0);
  EXPECT_EQ(psi.parity(), Parity::kAligned);
  EXPECT_THROW(encode_basis(l, 4), RangeError);
}

TEST(compiler, bell_circuit_decodes) {
  CompiledLayout l = layout_circuit(parse_circuit(read_file(std::string(UQCA_SOURCE_DIR) +
                                                            "/data/circuits/bell.qc")));
  DecodedState d = decode_lanes(l, run(encode_basis(l, 0), l.total_steps));
  ASSERT_EQ(d.amps.size(), 2u);
  EXPECT_NEAR(std::abs(d.amps[0]), kInvSqrt2, 1e-9);
  EXPECT_NEAR(std::abs(d.amps[3]), kInvSqrt2, 1e-9);
  EXPECT_LE(d.factor_error, 1e-9);
}

TEST(compiler, decode_at_intermediate_boundaries) {
  CompiledLayout l = layout_circuit(parse_circuit("qubits 2\nH 0\nH 1\nT 0\nT 1\n"));
  Superposition psi = encode_basis(l, 0);
  Superposition mid = run(psi, 24);
  StateVector got = decode_outputs(l, mid);
  EXPECT_NEAR(std::abs(got[3]), 0.5, 1e-9);
  EXPECT_THROW(decode_lanes(l, run(psi, 5)), RangeError);
}

TEST(compiler, round_trips_product_states) {
  std::mt19937_64 rng(21);
  CompiledLayout l = layout_circuit(parse_circuit("qubits 3\nID 0\nID 1\nID 2\n"));
  for (int trial = 0; trial < 3; ++trial) {
    StateVector in = StateVector::random_product(3, rng);
    EXPECT_NEAR(state_fidelity(decode_outputs(l, encode_inputs(l, in)), in), 1.0, 1e-12);
    EXPECT_NEAR(state_fidelity(simulate(l, in), in), 1.0, 1e-9);
  }
}

TEST(compiler, corpus_matches_oracle) {
  std::mt19937_64 rng(13);
  for (const auto &entry :
       std::filesystem::directory_iterator(std::string(UQCA_SOURCE_DIR) + "/data/circuits")) {
    CircuitIR c = parse_circuit(read_file(entry.path().string()));
    CompiledLayout l = layout_circuit(c);
    for (uint64_t b = 0; b < (uint64_t{1} << c.qubits); ++b) {
      StateVector in = StateVector::basis(c.qubits, b);
      EXPECT_NEAR(state_fidelity(simulate(l, in), apply_circuit(c, in)), 1.0, 1e-9)
          << entry.path() << " |" << b << ">";
    }
    StateVector in = StateVector::random(c.qubits, rng);
    EXPECT_NEAR(state_fidelity(simulate(l, in), apply_circuit(c, in)), 1.0, 1e-9) << entry.path();
  }
}

TEST(compiler, stray_signal_is_leakage) {
  CompiledLayout l = layout_circuit(parse_circuit("qubits 1\nH 0\n"));
  Superposition psi = encode_basis(l, 0);
  Configuration c = psi.branches().begin()->first;
  c.set({-30, -40}, S1);
  Superposition dirty(c, Parity::kAligned, 0);
  try {
    decode_lanes(l, dirty);
    FAIL();
  } catch (const LeakageError &e) {
    EXPECT_NE(std::string(e.what()).find("off-port"), std::string::npos);
  }
  DecodedState loose = decode_lanes(l, dirty, false);
  EXPECT_EQ(loose.amps.size(), 1u);
  Configuration empty_port = psi.branches().begin()->first.without_signals();
  EXPECT_THROW(decode_lanes(l, Superposition(empty_port)), LeakageError);
}

TEST(compiler, ports_sidecar_round_trips) {
  CompiledLayout l = layout_circuit(parse_circuit("qubits 3\nH 0\nCP 0 2\n"));
  CompiledLayout back = parse_ports(format_ports(l), l.machinery);
  EXPECT_EQ(back.qubits, l.qubits);
  EXPECT_EQ(back.total_steps, l.total_steps);
  EXPECT_EQ(back.in_ports, l.in_ports);
  EXPECT_EQ(back.out_ports, l.out_ports);
  EXPECT_EQ(back.entry_parity, l.entry_parity);
  EXPECT_THROW(parse_ports("inport 0 4 0\n", l.machinery), ParseError);
}

}  // namespace
}  // namespace uqca
