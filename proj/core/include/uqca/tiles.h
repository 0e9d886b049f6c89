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

#ifndef UQCA_TILES_H_
#define UQCA_TILES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "uqca/circuit.h"
#include "uqca/evolution.h"
#include "uqca/lattice.h"
#include "uqca/oracle.h"
#include "uqca/scattering.h"

namespace uqca {

inline constexpr int kTileDuration = 24;
inline constexpr int kLayerAdvance = 14;  // tile displacement per layer, both axes
inline constexpr int kLaneWidth = 8;
inline constexpr int kTileHeight = 14;
inline constexpr int kPortColumn = 4;

// Tiles are sheared strips: local row r spans x in [r, r + width).
// Lane j enters at (kPortColumn + kLaneWidth * j, 0) and leaves at the entry
// point plus (kLayerAdvance, kLayerAdvance).
struct TileSpec {
  std::string name;
  std::string description;
  GateKind gate = GateKind::kID;
  int lanes = 1;
  int width = kLaneWidth;
  int height = kTileHeight;
  int duration = kTileDuration;
  Parity entry_parity = Parity::kAligned;
  std::vector<Coord> barriers;
  std::vector<CellEntry> ancillas;
  std::vector<Coord> in_ports;
  std::vector<Coord> out_ports;

  bool in_footprint(const Coord &local) const;
  Configuration machinery(const Coord &origin = {0, 0}) const;
};

Coord lane_in_port(int lane);
Coord lane_out_port(int lane);

// Header lines (`name`, `gate`, `lanes`, `footprint`, `duration`, `parity`,
// `ports in|out x y ...`, `#` comments) followed by an `offset` line and grid
// rows. Signals in the grid are ancillas.
TileSpec parse_tile(std::string_view text);
std::string format_tile(const TileSpec &t);

const std::map<std::string, TileSpec> &builtin_tiles();
const TileSpec &builtin_tile(std::string_view name);
const TileSpec &tile_for_gate(GateKind kind);

struct TileReport {
  std::string name;
  bool ok = true;
  std::vector<std::string> failures;
  int duration = 0;
  Coord displacement;
  int ancilla_period = 0;  // 0 when the tile has no ancilla
  double gate_distance = 0;
  double superposition_fidelity = 0;
  DenseMatrix induced;
};

// Simulates every basis input and a superposed input, checking footprint
// containment, ancilla restoration, output ports and the induced matrix.
TileReport verify_tile(const TileSpec &t, const ScatteringTable &table = standard_table());

}  // namespace uqca

#endif  // UQCA_TILES_H_
