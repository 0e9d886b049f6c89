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

#include "uqca/tiles.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "uqca/error.h"

namespace uqca {

namespace internal {
extern const std::pair<std::string_view, std::string_view> kEmbeddedTiles[];
extern const int kEmbeddedTileCount;
}  // namespace internal

namespace {

std::string coord_text(const Coord &c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

std::string basis_label(uint64_t x, int lanes) {
  std::string s = "|";
  for (int j = 0; j < lanes; ++j) s.push_back(((x >> (lanes - 1 - j)) & 1) ? '1' : '0');
  return s + ">";
}

CellState lane_signal(uint64_t x, int lane, int lanes) {
  return ((x >> (lanes - 1 - lane)) & 1) ? CellState::kSig1 : CellState::kSig0;
}

bool parse_int(const std::string &s, int64_t *out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

bool opposite_pair(const BlockCells &b) {
  return (is_signal(b[kNW]) && is_signal(b[kSE])) || (is_signal(b[kNE]) && is_signal(b[kSW]));
}

// Returns a description of the first contract violation among the blocks
// about to be updated, or an empty string.
std::string check_blocks(const TileSpec &t, const Configuration &c, Parity p, int step_index) {
  for (const Coord &origin : signal_blocks(c, p)) {
    BlockCells cells = read_block(c, origin);
    if (opposite_pair(cells)) {
      return "signals at opposite corners of block " + coord_text(origin);
    }
    bool inside = true;
    for (const Coord &cell : block_coords(origin)) inside = inside && t.in_footprint(cell);
    if (inside) continue;
    bool exit = false;
    if (step_index == t.duration - 1) {
      for (const Coord &port : t.out_ports) {
        if (origin == port - Coord{1, 1} && is_signal(cells[kSW]) &&
            cells[kNW] == CellState::kEmpty && cells[kNE] == CellState::kEmpty &&
            !is_signal(cells[kSE])) {
          exit = true;
        }
      }
    }
    if (!exit) return "block " + coord_text(origin) + " leaves the footprint";
  }
  return "";
}

}  // namespace

bool TileSpec::in_footprint(const Coord &p) const {
  return p.y >= 0 && p.y < height && p.x >= p.y && p.x < p.y + width;
}

Configuration TileSpec::machinery(const Coord &origin) const {
  std::vector<CellEntry> entries;
  for (const Coord &b : barriers) entries.emplace_back(b + origin, CellState::kBarrier);
  for (const auto &[c, s] : ancillas) entries.emplace_back(c + origin, s);
  return Configuration::from_entries(entries);
}

Coord lane_in_port(int lane) { return {kPortColumn + kLaneWidth * lane, 0}; }
Coord lane_out_port(int lane) { return lane_in_port(lane) + Coord{kLayerAdvance, kLayerAdvance}; }

TileSpec parse_tile(std::string_view text) {
  TileSpec t;
  t.in_ports.clear();
  std::vector<std::string_view> lines;
  for (size_t pos = 0; pos <= text.size();) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  bool have_name = false, have_gate = false;
  size_t i = 0;
  for (; i < lines.size(); ++i) {
    std::string line(lines[i]);
    std::string where = "line " + std::to_string(i + 1) + ": ";
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      if (!t.description.empty()) t.description += "\n";
      t.description += body;
      continue;
    }
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    const std::string &key = tok[0];
    int64_t a = 0, b = 0;
    if (key == "offset") break;
    if (key == "name" && tok.size() == 2) {
      t.name = tok[1];
      have_name = true;
    } else if (key == "gate" && tok.size() == 2) {
      auto g = parse_gate_name(tok[1]);
      if (!g || *g == GateKind::kCNOT || *g == GateKind::kCZ) {
        throw ParseError(where + "unsupported tile gate '" + tok[1] + "'");
      }
      t.gate = *g;
      have_gate = true;
    } else if (key == "lanes" && tok.size() == 2 && parse_int(tok[1], &a) && a > 0) {
      t.lanes = static_cast<int>(a);
    } else if (key == "footprint" && tok.size() == 3 && parse_int(tok[1], &a) &&
               parse_int(tok[2], &b)) {
      t.width = static_cast<int>(a);
      t.height = static_cast<int>(b);
    } else if (key == "duration" && tok.size() == 2 && parse_int(tok[1], &a)) {
      t.duration = static_cast<int>(a);
    } else if (key == "parity" && tok.size() == 2 && parse_parity(tok[1])) {
      t.entry_parity = *parse_parity(tok[1]);
    } else if (key == "ports" && tok.size() >= 4 && tok.size() % 2 == 0 &&
               (tok[1] == "in" || tok[1] == "out")) {
      auto &ports = tok[1] == "in" ? t.in_ports : t.out_ports;
      ports.clear();
      for (size_t k = 2; k + 1 < tok.size(); k += 2) {
        if (!parse_int(tok[k], &a) || !parse_int(tok[k + 1], &b)) {
          throw ParseError(where + "bad port coordinate");
        }
        ports.push_back({a, b});
      }
    } else {
      throw ParseError(where + "unrecognized tile header '" + line + "'");
    }
  }
  if (i == lines.size()) throw ParseError("tile: missing 'offset' line");
  if (!have_name || !have_gate) throw ParseError("tile: 'name' and 'gate' are required");
  std::istringstream head{std::string(lines[i])};
  std::string word, xs, ys;
  head >> word >> xs >> ys;
  Coord top_left;
  if (!parse_int(xs, &top_left.x) || !parse_int(ys, &top_left.y)) {
    throw ParseError("line " + std::to_string(i + 1) + ": expected 'offset <x> <y>'");
  }
  std::vector<std::string_view> rows(lines.begin() + static_cast<long>(i) + 1, lines.end());
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  Configuration grid = parse_grid_rows(top_left, rows, static_cast<int>(i) + 2);
  t.barriers = grid.barriers();
  t.ancillas = grid.signals();
  if (static_cast<int>(t.in_ports.size()) != t.lanes ||
      static_cast<int>(t.out_ports.size()) != t.lanes) {
    throw ParseError("tile '" + t.name + "': port count does not match lanes");
  }
  return t;
}

std::string format_tile(const TileSpec &t) {
  std::string out;
  if (!t.description.empty()) {
    std::istringstream d(t.description);
    for (std::string line; std::getline(d, line);) out += "# " + line + "\n";
  }
  out += "name " + t.name + "\n";
  out += "gate " + std::string(gate_name(t.gate)) + "\n";
  out += "lanes " + std::to_string(t.lanes) + "\n";
  out += "footprint " + std::to_string(t.width) + " " + std::to_string(t.height) + "\n";
  out += "duration " + std::to_string(t.duration) + "\n";
  out += "parity " + std::string(parity_name(t.entry_parity)) + "\n";
  for (const char *dir : {"in", "out"}) {
    out += std::string("ports ") + dir;
    for (const Coord &p : std::string_view(dir) == "in" ? t.in_ports : t.out_ports) {
      out += " " + std::to_string(p.x) + " " + std::to_string(p.y);
    }
    out += "\n";
  }
  out += format_grid(t.machinery());
  return out;
}

const std::map<std::string, TileSpec> &builtin_tiles() {
  static const std::map<std::string, TileSpec> kTiles = [] {
    std::map<std::string, TileSpec> m;
    for (int i = 0; i < internal::kEmbeddedTileCount; ++i) {
      TileSpec t = parse_tile(internal::kEmbeddedTiles[i].second);
      m.emplace(t.name, std::move(t));
    }
    return m;
  }();
  return kTiles;
}

const TileSpec &builtin_tile(std::string_view name) {
  const auto &tiles = builtin_tiles();
  auto it = tiles.find(std::string(name));
  if (it == tiles.end()) throw RangeError("no builtin tile named '" + std::string(name) + "'");
  return it->second;
}

const TileSpec &tile_for_gate(GateKind kind) {
  for (const auto &[name, t] : builtin_tiles()) {
    if (t.gate == kind) return t;
  }
  throw RangeError("no tile implements gate " + std::string(gate_name(kind)));
}

TileReport verify_tile(const TileSpec &t, const ScatteringTable &table) {
  TileReport r;
  r.name = t.name;
  r.duration = t.duration;
  auto fail = [&](const std::string &msg) {
    r.ok = false;
    r.failures.push_back(msg);
  };

  if (t.duration != kTileDuration) fail("duration " + std::to_string(t.duration) + " != 24");
  if (t.gate == GateKind::kCNOT || t.gate == GateKind::kCZ || gate_arity(t.gate) != t.lanes) {
    fail("gate arity does not match lane count");
  }
  if (t.width != kLaneWidth * t.lanes || t.height != kTileHeight) fail("unexpected footprint");
  if (t.entry_parity != Parity::kAligned) fail("entry parity must be aligned");
  for (int j = 0; j < t.lanes && j < static_cast<int>(t.in_ports.size()); ++j) {
    if (t.in_ports[j] != lane_in_port(j)) fail("lane " + std::to_string(j) + " in-port misplaced");
    if (j < static_cast<int>(t.out_ports.size()) && t.out_ports[j] != lane_out_port(j)) {
      fail("lane " + std::to_string(j) + " out-port misplaced");
    }
  }
  if (!t.in_ports.empty() && !t.out_ports.empty()) r.displacement = t.out_ports[0] - t.in_ports[0];
  Configuration machinery = t.machinery();
  for (const auto &[c, s] : machinery.entries()) {
    if (!t.in_footprint(c)) fail("machinery cell " + coord_text(c) + " outside footprint");
  }
  for (const Coord &p : t.in_ports) {
    if (machinery.get(p) != CellState::kEmpty) fail("in-port " + coord_text(p) + " occupied");
  }
  if (machinery.get({kPortColumn - 1, 0}) != CellState::kEmpty) fail("reserved cell (3,0) occupied");
  if (!r.ok) return r;

  StepOptions opts;
  opts.prune_threshold = 0;

  if (!t.ancillas.empty()) {
    Superposition psi(machinery, t.entry_parity, 0);
    for (int s = 0; s < t.duration; ++s) {
      const Configuration &c = psi.branches().begin()->first;
      std::string v = check_blocks(t, c, psi.parity(), -1);
      if (v.empty() && s % kTileDuration == kTileDuration - 1) {
        for (const Coord &cell : {Coord{kPortColumn - 1, 0}, Coord{kPortColumn, 0}}) {
          if (is_signal(c.get(cell))) v = "ancilla on reserved cell " + coord_text(cell);
        }
      }
      if (!v.empty()) {
        fail("ancilla alone: step " + std::to_string(s) + ": " + v);
        return r;
      }
      psi = step(psi, table, opts);
      if (psi.branch_count() != 1) {
        fail("ancilla alone: step " + std::to_string(s) + ": ancilla branches");
        return r;
      }
      if (r.ancilla_period == 0 && psi.branches().begin()->first == machinery) {
        r.ancilla_period = s + 1;
      }
    }
    if (r.ancilla_period == 0 || t.duration % r.ancilla_period != 0) {
      fail("ancilla is not restored after " + std::to_string(t.duration) + " steps");
      return r;
    }
  }

  const uint64_t dim = uint64_t{1} << t.lanes;
  r.induced = DenseMatrix(dim);
  auto read_out = [&](const Superposition &psi, const std::string &label,
                      std::vector<Amplitude> *col) -> bool {
    for (const auto &[c, amp] : psi.branches()) {
      uint64_t index = 0;
      std::vector<CellEntry> rest;
      for (const auto &e : c.signals()) {
        auto port = std::find(t.out_ports.begin(), t.out_ports.end(), e.first);
        if (port == t.out_ports.end()) {
          rest.push_back(e);
          continue;
        }
        int lane = static_cast<int>(port - t.out_ports.begin());
        if (e.second == CellState::kSig1) index |= uint64_t{1} << (t.lanes - 1 - lane);
      }
      if (c.signal_count() - rest.size() != static_cast<size_t>(t.lanes)) {
        fail("input " + label + ": signals missing from out-ports");
        return false;
      }
      if (!(c.with_signals(rest) == machinery)) {
        fail("input " + label + ": residual signals or unrestored ancilla");
        return false;
      }
      (*col)[index] += amp;
    }
    return true;
  };

  for (uint64_t x = 0; x < dim; ++x) {
    std::string label = basis_label(x, t.lanes);
    Configuration c = machinery;
    for (int j = 0; j < t.lanes; ++j) c.set(t.in_ports[j], lane_signal(x, j, t.lanes));
    Superposition psi(c, t.entry_parity, 0);
    for (int s = 0; s < t.duration; ++s) {
      for (const auto &[branch, amp] : psi.branches()) {
        std::string v = check_blocks(t, branch, psi.parity(), s);
        if (!v.empty()) {
          fail("input " + label + ": step " + std::to_string(s) + ": " + v);
          return r;
        }
      }
      psi = step(psi, table, opts);
    }
    std::vector<Amplitude> col(dim);
    if (!read_out(psi, label, &col)) return r;
    for (uint64_t k = 0; k < dim; ++k) r.induced.at(k, x) = col[k];
  }

  DenseMatrix expected = gate_matrix(t.gate);
  r.gate_distance = phase_adjusted_distance(r.induced, expected);
  if (r.gate_distance > 1e-9) {
    fail("induced matrix differs from " + std::string(gate_name(t.gate)) + " by " +
         std::to_string(r.gate_distance));
  }

  Superposition::BranchMap start;
  double a = 1.0 / std::sqrt(static_cast<double>(dim));
  for (uint64_t x = 0; x < dim; ++x) {
    Configuration c = machinery;
    for (int j = 0; j < t.lanes; ++j) c.set(t.in_ports[j], lane_signal(x, j, t.lanes));
    start.emplace(c, a);
  }
  Superposition psi = run(Superposition(std::move(start), t.entry_parity, 0), t.duration, table, opts);
  std::vector<Amplitude> col(dim);
  if (!read_out(psi, "uniform", &col)) return r;
  StateVector plus(t.lanes, std::vector<Amplitude>(dim, a));
  StateVector want(t.lanes);
  for (uint64_t row = 0; row < dim; ++row) {
    Amplitude v = 0;
    for (uint64_t k = 0; k < dim; ++k) v += expected.at(row, k) * plus[k];
    want[row] = v;
  }
  r.superposition_fidelity = state_fidelity(StateVector(t.lanes, col), want);
  if (r.superposition_fidelity < 1 - 1e-9) fail("superposed input fidelity too low");
  return r;
}

}  // namespace uqca
