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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "uqca/error.h"
#include "uqca/tiles.h"

namespace uqca {

namespace {

bool adjacent(const GateOp &g) {
  return g.arity() == 1 || std::abs(g.targets[0] - g.targets[1]) == 1;
}

std::vector<CellEntry> sorted_signals(std::vector<CellEntry> s) {
  std::sort(s.begin(), s.end(),
            [](const CellEntry &a, const CellEntry &b) { return canonical_less(a.first, b.first); });
  return s;
}

Configuration with_port_signals(const CompiledLayout &l, uint64_t basis) {
  std::vector<CellEntry> signals = l.machinery.signals();
  for (int q = 0; q < l.qubits; ++q) {
    bool one = (basis >> (l.qubits - 1 - q)) & 1;
    signals.emplace_back(l.in_ports[q], one ? CellState::kSig1 : CellState::kSig0);
  }
  return l.machinery.with_signals(sorted_signals(std::move(signals)));
}

}  // namespace

Coord CompiledLayout::port(int qubit, int boundary) const {
  return in_ports.at(static_cast<size_t>(qubit)) +
         Coord{int64_t{kLayerAdvance} * boundary, int64_t{kLayerAdvance} * boundary};
}

CircuitIR route_circuit(const CircuitIR &input) {
  input.validate();
  CircuitIR c = input;
  for (const auto &g : flatten_gates(input)) {
    if (g.kind == GateKind::kCNOT || g.kind == GateKind::kCZ) {
      c = layer_gates(input.qubits, flatten_gates(input));
      break;
    }
  }
  CircuitIR out;
  out.qubits = c.qubits;
  for (const auto &layer : c.layers) {
    std::vector<GateOp> kept;
    std::vector<GateOp> far;
    for (const auto &g : layer) (adjacent(g) ? kept : far).push_back(g);
    if (!kept.empty() || far.empty()) out.layers.push_back(kept);
    for (const auto &g : far) {
      int a = g.targets[0], b = g.targets[1];
      int dir = b > a ? -1 : 1;
      std::vector<GateOp> swaps;
      for (int pos = b; pos + dir != a; pos += dir) {
        swaps.push_back(gate2(GateKind::kSWAP, std::min(pos, pos + dir), std::max(pos, pos + dir)));
      }
      for (const auto &s : swaps) out.layers.push_back({s});
      out.layers.push_back({gate2(g.kind, a, a - dir)});
      for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) out.layers.push_back({*it});
    }
  }
  return out;
}

CompiledLayout layout_circuit(const CircuitIR &c) {
  CompiledLayout l;
  l.routed = route_circuit(c);
  l.qubits = c.qubits;
  l.layers = static_cast<int>(l.routed.layers.size());
  l.total_steps = int64_t{kTileDuration} * l.layers;
  l.entry_parity = Parity::kAligned;

  std::vector<CellEntry> entries;
  std::unordered_set<Coord, CoordHash> used;
  auto place = [&](const TileSpec &t, int lane, int layer) {
    if (t.entry_parity != l.entry_parity) throw LayoutError("tile '" + t.name + "' parity mismatch");
    Coord origin{int64_t{kLaneWidth} * lane + int64_t{kLayerAdvance} * layer,
                 int64_t{kLayerAdvance} * layer};
    for (const auto &[cell, state] : t.machinery(origin).entries()) {
      if (!used.insert(cell).second) {
        throw LayoutError("tile overlap at (" + std::to_string(cell.x) + "," +
                          std::to_string(cell.y) + ")");
      }
      entries.emplace_back(cell, state);
    }
  };
  for (int k = 0; k < l.layers; ++k) {
    std::vector<const GateOp *> owner(static_cast<size_t>(l.qubits), nullptr);
    for (const auto &g : l.routed.layers[k]) {
      for (int i = 0; i < g.arity(); ++i) owner[g.targets[i]] = &g;
    }
    for (int lane = 0; lane < l.qubits;) {
      const GateOp *g = owner[lane];
      if (g == nullptr) {
        place(tile_for_gate(GateKind::kID), lane, k);
        ++lane;
      } else if (g->arity() == 1) {
        place(tile_for_gate(g->kind), lane, k);
        ++lane;
      } else {
        place(tile_for_gate(g->kind), lane, k);
        lane += 2;
      }
    }
  }
  l.machinery = Configuration::from_entries(entries);
  for (int q = 0; q < l.qubits; ++q) {
    l.in_ports.push_back(lane_in_port(q));
    l.out_ports.push_back(l.port(q, l.layers));
  }
  for (int q = 0; q < l.qubits; ++q) {
    if (used.count(l.in_ports[q]) || used.count(l.out_ports[q])) {
      throw LayoutError("port of qubit " + std::to_string(q) + " collides with machinery");
    }
  }
  return l;
}

Superposition encode_basis(const CompiledLayout &l, uint64_t basis) {
  if (l.qubits < 64 && basis >> l.qubits) throw RangeError("basis index out of range");
  return Superposition(with_port_signals(l, basis), l.entry_parity, 0);
}

Superposition encode_sparse(const CompiledLayout &l, const std::map<uint64_t, Amplitude> &amps) {
  Superposition::BranchMap branches;
  for (const auto &[x, a] : amps) {
    if (a == Amplitude(0)) continue;
    if (l.qubits < 64 && x >> l.qubits) throw RangeError("basis index out of range");
    branches.emplace(with_port_signals(l, x), a);
  }
  return Superposition(std::move(branches), l.entry_parity, 0);
}

Superposition encode_inputs(const CompiledLayout &l, const StateVector &s) {
  if (s.qubits() != l.qubits) throw RangeError("state and layout qubit counts differ");
  std::map<uint64_t, Amplitude> amps;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != Amplitude(0)) amps.emplace(i, s[i]);
  }
  return encode_sparse(l, amps);
}

StateVector DecodedState::dense() const {
  StateVector s = StateVector::basis(qubits, 0);
  s[0] = 0;
  for (const auto &[x, a] : amps) s[x] = a;
  return s;
}

DecodedState decode_lanes(const CompiledLayout &l, const Superposition &psi, bool strict) {
  if (psi.time() % kTileDuration != 0 || psi.time() < 0 ||
      psi.time() / kTileDuration > l.layers) {
    throw RangeError("time " + std::to_string(psi.time()) + " is not a layer boundary");
  }
  int boundary = static_cast<int>(psi.time() / kTileDuration);
  std::vector<Coord> ports;
  for (int q = 0; q < l.qubits; ++q) ports.push_back(l.port(q, boundary));

  std::map<std::pair<uint64_t, Configuration>, Amplitude> joint;
  std::map<Configuration, double> residue_weight;
  std::map<uint64_t, double> basis_weight;
  for (const auto &[c, amp] : psi.branches()) {
    uint64_t bits = 0;
    int found = 0;
    std::vector<CellEntry> rest;
    for (const auto &e : c.signals()) {
      auto it = std::find(ports.begin(), ports.end(), e.first);
      if (it == ports.end()) {
        rest.push_back(e);
        continue;
      }
      ++found;
      int q = static_cast<int>(it - ports.begin());
      if (e.second == CellState::kSig1) bits |= uint64_t{1} << (l.qubits - 1 - q);
    }
    if (found != l.qubits) throw LeakageError("a port is empty at time " + std::to_string(psi.time()));
    Configuration residue = c.with_signals(rest);
    if (strict && !(residue == l.machinery)) {
      for (const auto &e : rest) {
        if (l.machinery.get(e.first) != e.second) {
          throw LeakageError("signal off-port at (" + std::to_string(e.first.x) + "," +
                             std::to_string(e.first.y) + ")");
        }
      }
      throw LeakageError("machinery not restored");
    }
    joint[{bits, residue}] += amp;
    residue_weight[residue] += std::norm(amp);
    basis_weight[bits] += std::norm(amp);
  }

  DecodedState d;
  d.qubits = l.qubits;
  Superposition::BranchMap phi;
  if (residue_weight.size() <= 1) {
    for (const auto &[key, a] : joint) d.amps[key.first] += a;
    phi.emplace(residue_weight.empty() ? l.machinery : residue_weight.begin()->first, 1.0);
  } else {
    auto best = std::max_element(basis_weight.begin(), basis_weight.end(),
                                 [](const auto &a, const auto &b) { return a.second < b.second; });
    double n = std::sqrt(best->second);
    for (const auto &[key, a] : joint) {
      if (key.first == best->first) phi.emplace(key.second, a / n);
    }
    double captured = 0;
    for (const auto &[x, w] : basis_weight) {
      Amplitude v = 0;
      for (const auto &[r, f] : phi) {
        auto it = joint.find({x, r});
        if (it != joint.end()) v += std::conj(f) * it->second;
      }
      if (v != Amplitude(0)) d.amps[x] = v;
      captured += std::norm(v);
    }
    d.factor_error = std::abs(psi.norm_squared() - captured);
  }
  d.residue = Superposition(std::move(phi), psi.parity(), psi.time());
  return d;
}

StateVector decode_outputs(const CompiledLayout &l, const Superposition &psi) {
  return decode_lanes(l, psi, true).dense();
}

std::string format_ports(const CompiledLayout &l) {
  std::string out;
  for (int q = 0; q < l.qubits; ++q) {
    out += "inport " + std::to_string(q) + " " + std::to_string(l.in_ports[q].x) + " " +
           std::to_string(l.in_ports[q].y) + "\n";
  }
  for (int q = 0; q < l.qubits; ++q) {
    out += "outport " + std::to_string(q) + " " + std::to_string(l.out_ports[q].x) + " " +
           std::to_string(l.out_ports[q].y) + "\n";
  }
  out += "steps " + std::to_string(l.total_steps) + "\n";
  out += "parity " + std::string(parity_name(l.entry_parity)) + "\n";
  return out;
}

CompiledLayout parse_ports(std::string_view text, const Configuration &machinery) {
  CompiledLayout l;
  l.machinery = machinery;
  std::map<int, Coord> ins, outs;
  bool have_steps = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream w(line);
    std::string key;
    if (!(w >> key)) continue;
    std::string where = "line " + std::to_string(line_no) + ": ";
    if (key == "inport" || key == "outport") {
      int i;
      int64_t x, y;
      if (!(w >> i >> x >> y) || i < 0) throw ParseError(where + "expected '" + key + " i x y'");
      (key == "inport" ? ins : outs)[i] = {x, y};
    } else if (key == "steps") {
      if (!(w >> l.total_steps) || l.total_steps < 0) throw ParseError(where + "bad step count");
      have_steps = true;
    } else if (key == "parity") {
      std::string p;
      w >> p;
      auto parsed = parse_parity(p);
      if (!parsed) throw ParseError(where + "bad parity '" + p + "'");
      l.entry_parity = *parsed;
    } else {
      throw ParseError(where + "unknown key '" + key + "'");
    }
  }
  if (!have_steps) throw ParseError("ports: missing 'steps'");
  if (ins.size() != outs.size()) throw ParseError("ports: inport/outport counts differ");
  l.qubits = static_cast<int>(ins.size());
  for (int q = 0; q < l.qubits; ++q) {
    if (!ins.count(q) || !outs.count(q)) throw ParseError("ports: qubit indices not contiguous");
    l.in_ports.push_back(ins[q]);
    l.out_ports.push_back(outs[q]);
  }
  l.layers = static_cast<int>(l.total_steps / kTileDuration);
  return l;
}

}  // namespace uqca
