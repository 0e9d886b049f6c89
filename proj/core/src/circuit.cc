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

#include <algorithm>
#include <charconv>
#include <sstream>

#include "uqca/error.h"

namespace uqca {

namespace {

std::string line_prefix(int line) { return "line " + std::to_string(line) + ": "; }

bool parse_index(const std::string &s, int *out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH:
      return "H";
    case GateKind::kT:
      return "T";
    case GateKind::kCP:
      return "CP";
    case GateKind::kSWAP:
      return "SWAP";
    case GateKind::kID:
      return "ID";
    case GateKind::kCNOT:
      return "CNOT";
    case GateKind::kCZ:
      return "CZ";
  }
  return "?";
}

std::optional<GateKind> parse_gate_name(std::string_view name) {
  for (GateKind k : {GateKind::kH, GateKind::kT, GateKind::kCP, GateKind::kSWAP, GateKind::kID,
                     GateKind::kCNOT, GateKind::kCZ}) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::kH:
    case GateKind::kT:
    case GateKind::kID:
      return 1;
    default:
      return 2;
  }
}

GateOp gate1(GateKind kind, int q) { return GateOp{kind, {q, -1}}; }
GateOp gate2(GateKind kind, int a, int b) { return GateOp{kind, {a, b}}; }

std::string format_gate(const GateOp &g) {
  std::string s(gate_name(g.kind));
  s += " " + std::to_string(g.targets[0]);
  if (g.arity() == 2) s += " " + std::to_string(g.targets[1]);
  return s;
}

size_t CircuitIR::gate_count() const {
  size_t n = 0;
  for (const auto &layer : layers) n += layer.size();
  return n;
}

void CircuitIR::validate() const {
  if (qubits < 0) throw RangeError("negative qubit count");
  for (size_t l = 0; l < layers.size(); ++l) {
    std::vector<bool> used(static_cast<size_t>(qubits), false);
    for (const auto &g : layers[l]) {
      for (int i = 0; i < g.arity(); ++i) {
        int q = g.targets[i];
        if (q < 0 || q >= qubits) {
          throw RangeError("layer " + std::to_string(l) + ": target " + std::to_string(q) +
                           " out of range");
        }
        if (used[q]) {
          throw RangeError("layer " + std::to_string(l) + ": qubit " + std::to_string(q) +
                           " used twice");
        }
        used[q] = true;
      }
    }
  }
}

std::vector<GateOp> expand_gate(const GateOp &g) {
  int a = g.targets[0], b = g.targets[1];
  switch (g.kind) {
    case GateKind::kCNOT: {
      std::vector<GateOp> out{gate1(GateKind::kH, b)};
      for (int i = 0; i < 4; ++i) out.push_back(gate2(GateKind::kCP, a, b));
      out.push_back(gate1(GateKind::kH, b));
      return out;
    }
    case GateKind::kCZ:
      return std::vector<GateOp>(4, gate2(GateKind::kCP, a, b));
    default:
      return {g};
  }
}

CircuitIR layer_gates(int qubits, const std::vector<GateOp> &gates) {
  CircuitIR c;
  c.qubits = qubits;
  std::vector<size_t> next_free(static_cast<size_t>(std::max(qubits, 0)), 0);
  for (const auto &raw : gates) {
    for (const auto &g : expand_gate(raw)) {
      for (int i = 0; i < g.arity(); ++i) {
        if (g.targets[i] < 0 || g.targets[i] >= qubits) {
          throw RangeError("target " + std::to_string(g.targets[i]) + " out of range");
        }
      }
      size_t layer = next_free[g.targets[0]];
      if (g.arity() == 2) layer = std::max(layer, next_free[g.targets[1]]);
      if (c.layers.size() <= layer) c.layers.resize(layer + 1);
      c.layers[layer].push_back(g);
      for (int i = 0; i < g.arity(); ++i) next_free[g.targets[i]] = layer + 1;
    }
  }
  return c;
}

std::vector<GateOp> flatten_gates(const CircuitIR &c) {
  std::vector<GateOp> out;
  for (const auto &layer : c.layers) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

CircuitIR parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int qubits = -1;
  std::vector<GateOp> gates;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (qubits < 0) {
      if (tok[0] != "qubits" || tok.size() != 2 || !parse_index(tok[1], &qubits) || qubits < 0) {
        throw ParseError(line_prefix(line_no) + "expected 'qubits <n>'");
      }
      continue;
    }
    auto kind = parse_gate_name(tok[0]);
    if (!kind) throw ParseError(line_prefix(line_no) + "unknown gate '" + tok[0] + "'");
    int arity = gate_arity(*kind);
    if (static_cast<int>(tok.size()) != arity + 1) {
      throw ParseError(line_prefix(line_no) + tok[0] + " takes " + std::to_string(arity) +
                       " target(s)");
    }
    GateOp g{*kind, {0, -1}};
    for (int i = 0; i < arity; ++i) {
      if (!parse_index(tok[1 + i], &g.targets[i])) {
        throw ParseError(line_prefix(line_no) + "bad qubit index '" + tok[1 + i] + "'");
      }
      if (g.targets[i] < 0 || g.targets[i] >= qubits) {
        throw ParseError(line_prefix(line_no) + "target " + tok[1 + i] + " out of range");
      }
    }
    if (arity == 2 && g.targets[0] == g.targets[1]) {
      throw ParseError(line_prefix(line_no) + "two-qubit gate needs distinct targets");
    }
    gates.push_back(g);
  }
  if (qubits < 0) throw ParseError("line " + std::to_string(line_no + 1) + ": missing 'qubits <n>'");
  return layer_gates(qubits, gates);
}

std::string format_circuit(const CircuitIR &c) {
  std::string out = "qubits " + std::to_string(c.qubits) + "\n";
  for (size_t l = 0; l < c.layers.size(); ++l) {
    out += "# layer " + std::to_string(l) + "\n";
    for (const auto &g : c.layers[l]) out += format_gate(g) + "\n";
  }
  return out;
}

CircuitIR adjoint_circuit(const CircuitIR &c) {
  std::vector<GateOp> gates;
  for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
    for (const auto &g : *it) {
      int repeat = (g.kind == GateKind::kT || g.kind == GateKind::kCP) ? 7 : 1;
      for (int i = 0; i < repeat; ++i) gates.push_back(g);
    }
  }
  return layer_gates(c.qubits, gates);
}

}  // namespace uqca
