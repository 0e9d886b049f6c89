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

#include "uqca/circuit.h"

#include "gtest/gtest.h"
#include "uqca/error.h"
#include "uqca/oracle.h"

namespace uqca {
namespace {

TEST(circuit, parse_bell) {
  CircuitIR c = parse_circuit("# bell pair\nqubits 2\nH 0\nCP 0 1  # controlled phase\n");
  EXPECT_EQ(c.qubits, 2);
  ASSERT_EQ(c.layers.size(), 2u);
  EXPECT_EQ(c.layers[0], (std::vector<GateOp>{gate1(GateKind::kH, 0)}));
  EXPECT_EQ(c.layers[1], (std::vector<GateOp>{gate2(GateKind::kCP, 0, 1)}));
}

TEST(circuit, cnot_expands_to_six_layers) {
  CircuitIR c = parse_circuit("qubits 2\nCNOT 0 1\n");
  ASSERT_EQ(c.layers.size(), 6u);
  EXPECT_EQ(c.layers.front()[0], gate1(GateKind::kH, 1));
  EXPECT_EQ(c.layers.back()[0], gate1(GateKind::kH, 1));
  for (int i = 1; i < 5; ++i) EXPECT_EQ(c.layers[i][0], gate2(GateKind::kCP, 0, 1));
}

TEST(circuit, cz_is_four_controlled_phases) {
  CircuitIR c = parse_circuit("qubits 3\nCZ 2 0\n");
  EXPECT_EQ(c.gate_count(), 4u);
  for (const auto &layer : c.layers) EXPECT_EQ(layer[0], gate2(GateKind::kCP, 2, 0));
}

TEST(circuit, asap_layering_packs_disjoint_gates) {
  CircuitIR c = parse_circuit("qubits 3\nH 0\nH 1\nT 2\nSWAP 0 1\nH 2\n");
  ASSERT_EQ(c.layers.size(), 2u);
  EXPECT_EQ(c.layers[0].size(), 3u);
  EXPECT_EQ(c.layers[1].size(), 2u);
  c.validate();
}

TEST(circuit, format_round_trip) {
  CircuitIR c = parse_circuit("qubits 3\nH 0\nCP 0 2\nSWAP 1 2\nT 1\nID 0\n");
  EXPECT_EQ(parse_circuit(format_circuit(c)), c);
}

TEST(circuit, parse_errors_carry_line_numbers) {
  struct Case {
    const char *text;
    const char *where;
  };
  for (const Case &k : {Case{"H 0\n", "line 1"}, Case{"qubits 2\n\nFOO 1\n", "line 3"},
                        Case{"qubits 2\nH 2\n", "line 2"}, Case{"qubits 2\nCP 1 1\n", "line 2"},
                        Case{"qubits 2\nCP 1\n", "line 2"}, Case{"qubits 2\nH x\n", "line 2"},
                        Case{"# only a comment\n", "line 2"}}) {
    try {
      parse_circuit(k.text);
      FAIL() << k.text;
    } catch (const ParseError &e) {
      EXPECT_EQ(std::string(e.what()).rfind(k.where, 0), 0u) << e.what();
      EXPECT_EQ(e.kind(), "parse");
    }
  }
}

TEST(circuit, validate_rejects_bad_layers) {
  CircuitIR c;
  c.qubits = 2;
  c.layers = {{gate1(GateKind::kH, 0), gate2(GateKind::kCP, 0, 1)}};
  EXPECT_THROW(c.validate(), RangeError);
  c.layers = {{gate1(GateKind::kH, 2)}};
  EXPECT_THROW(c.validate(), RangeError);
  EXPECT_THROW(layer_gates(2, {gate1(GateKind::kH, 5)}), RangeError);
}

TEST(circuit, adjoint_inverts_the_unitary) {
  CircuitIR c = parse_circuit("qubits 3\nH 0\nT 1\nCP 0 2\nSWAP 1 2\nCNOT 2 0\n");
  CircuitIR adj = adjoint_circuit(c);
  DenseMatrix u = circuit_unitary(c);
  DenseMatrix v = circuit_unitary(adj);
  EXPECT_LE((v * u).max_abs_diff(DenseMatrix::identity(8)), 1e-12);
}

TEST(circuit, gate_names_round_trip) {
  for (GateKind k : {GateKind::kH, GateKind::kT, GateKind::kCP, GateKind::kSWAP, GateKind::kID,
                     GateKind::kCNOT, GateKind::kCZ}) {
    EXPECT_EQ(parse_gate_name(gate_name(k)), k);
  }
  EXPECT_FALSE(parse_gate_name("h").has_value());
  EXPECT_EQ(format_gate(gate2(GateKind::kCP, 0, 3)), "CP 0 3");
}

}  // namespace
}  // namespace uqca
