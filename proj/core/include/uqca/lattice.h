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

#ifndef UQCA_LATTICE_H_
#define UQCA_LATTICE_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace uqca {

enum class CellState : uint8_t {
  kEmpty = 0,
  kSig0 = 1,
  kSig1 = 2,
  kBarrier = 3,
};

inline bool is_signal(CellState s) {
  return s == CellState::kSig0 || s == CellState::kSig1;
}
char cell_char(CellState s);
std::optional<CellState> cell_from_char(char c);

struct Coord {
  int64_t x = 0;
  int64_t y = 0;

  friend bool operator==(const Coord &, const Coord &) = default;
  Coord operator+(const Coord &o) const { return {x + o.x, y + o.y}; }
  Coord operator-(const Coord &o) const { return {x - o.x, y - o.y}; }
};

struct CoordHash {
  size_t operator()(const Coord &c) const {
    uint64_t h = static_cast<uint64_t>(c.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<uint64_t>(c.y) + 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }
};

// Canonical cell order: north rows first, then west to east.
inline bool canonical_less(const Coord &a, const Coord &b) {
  return a.y != b.y ? a.y > b.y : a.x < b.x;
}
std::strong_ordering canonical_compare(const Coord &a, const Coord &b);

enum class Parity : uint8_t {
  kAligned = 0,  // block origins at even coordinates
  kShifted = 1,  // block origins at odd coordinates
};

inline Parity flip(Parity p) {
  return p == Parity::kAligned ? Parity::kShifted : Parity::kAligned;
}
std::string_view parity_name(Parity p);
std::optional<Parity> parse_parity(std::string_view text);

int64_t floor_div(int64_t a, int64_t b);
Coord block_origin(const Coord &cell, Parity p);
bool is_block_origin(const Coord &origin, Parity p);

// Block cell order is NW, NE, SW, SE. The origin is the SW cell.
enum BlockCorner : int { kNW = 0, kNE = 1, kSW = 2, kSE = 3 };
using BlockCells = std::array<CellState, 4>;
std::array<Coord, 4> block_coords(const Coord &origin);

struct Block {
  Coord origin;
  BlockCells cells{};
};

using CellEntry = std::pair<Coord, CellState>;

struct BarrierLayer {
  std::unordered_set<Coord, CoordHash> cells;
  std::vector<Coord> sorted;  // canonical order
};

// Finitely supported map from Coord to non-empty CellState.
//
// Barriers and signals are stored apart: barrier layers are shared between
// configurations (copy on write) while signals live in a small sorted vector.
class Configuration {
 public:
  Configuration();
  static Configuration from_entries(const std::vector<CellEntry> &entries);

  CellState get(const Coord &c) const;
  void set(const Coord &c, CellState s);

  size_t size() const { return signals_.size() + barriers_->sorted.size(); }
  bool empty() const { return size() == 0; }
  size_t signal_count() const { return signals_.size(); }
  size_t barrier_count() const { return barriers_->sorted.size(); }

  // Canonical order views.
  const std::vector<CellEntry> &signals() const { return signals_; }
  const std::vector<Coord> &barriers() const { return barriers_->sorted; }
  bool is_barrier(const Coord &c) const { return barriers_->cells.count(c) != 0; }
  std::vector<CellEntry> entries() const;

  // Same barrier layer, new signal set. `signals` must be in canonical order
  // and must not overlap barriers.
  Configuration with_signals(std::vector<CellEntry> signals) const;
  Configuration without_signals() const;
  bool shares_barriers_with(const Configuration &other) const {
    return barriers_ == other.barriers_;
  }

  Configuration translated(const Coord &delta) const;
  // Cells of `other` written over this configuration (Empty cells ignored).
  Configuration merged_with(const Configuration &other) const;

  friend bool operator==(const Configuration &a, const Configuration &b);
  friend bool operator<(const Configuration &a, const Configuration &b);

 private:
  std::shared_ptr<BarrierLayer> barriers_;
  std::vector<CellEntry> signals_;
};

std::vector<Coord> active_blocks(const Configuration &c, Parity p);
std::vector<Coord> signal_blocks(const Configuration &c, Parity p);
BlockCells read_block(const Configuration &c, const Coord &origin);
Configuration write_block(const Configuration &c, const Coord &origin,
                          const BlockCells &cells, Parity p);

struct BoundingBox {
  int64_t min_x = 0, min_y = 0, max_x = -1, max_y = -1;
  bool empty() const { return max_x < min_x; }
};
BoundingBox bounding_box(const Configuration &c);

// Grid text: `offset <x> <y>` naming the top-left character, then rows from
// north to south over `.0 1#`. Trailing dots may be omitted.
Configuration parse_grid(std::string_view text);
Configuration parse_grid_rows(const Coord &top_left,
                              const std::vector<std::string_view> &rows,
                              int first_line_number = 2);
std::string format_grid(const Configuration &c);
std::string format_grid_window(const Configuration &c, const BoundingBox &box);

}  // namespace uqca

#endif  // UQCA_LATTICE_H_
