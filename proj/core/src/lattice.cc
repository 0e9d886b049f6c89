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

#include "uqca/lattice.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "uqca/error.h"

namespace uqca {

namespace {

bool entry_less(const CellEntry &a, const CellEntry &b) {
  return canonical_less(a.first, b.first);
}

std::shared_ptr<BarrierLayer> empty_layer() {
  static const auto kEmpty = std::make_shared<BarrierLayer>();
  return kEmpty;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  // A terminating newline does not start a row.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool parse_int(std::string_view s, int64_t *out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

char cell_char(CellState s) {
  switch (s) {
    case CellState::kEmpty:
      return '.';
    case CellState::kSig0:
      return '0';
    case CellState::kSig1:
      return '1';
    case CellState::kBarrier:
      return '#';
  }
  return '?';
}

std::optional<CellState> cell_from_char(char c) {
  switch (c) {
    case '.':
      return CellState::kEmpty;
    case '0':
      return CellState::kSig0;
    case '1':
      return CellState::kSig1;
    case '#':
      return CellState::kBarrier;
    default:
      return std::nullopt;
  }
}

std::strong_ordering canonical_compare(const Coord &a, const Coord &b) {
  if (a.y != b.y) return b.y <=> a.y;
  return a.x <=> b.x;
}

std::string_view parity_name(Parity p) {
  return p == Parity::kAligned ? "aligned" : "shifted";
}

std::optional<Parity> parse_parity(std::string_view text) {
  if (text == "aligned") return Parity::kAligned;
  if (text == "shifted") return Parity::kShifted;
  return std::nullopt;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Coord block_origin(const Coord &cell, Parity p) {
  int64_t off = static_cast<int64_t>(p);
  return {floor_div(cell.x - off, 2) * 2 + off, floor_div(cell.y - off, 2) * 2 + off};
}

bool is_block_origin(const Coord &origin, Parity p) {
  return block_origin(origin, p) == origin;
}

std::array<Coord, 4> block_coords(const Coord &o) {
  return {Coord{o.x, o.y + 1}, Coord{o.x + 1, o.y + 1}, Coord{o.x, o.y},
          Coord{o.x + 1, o.y}};
}

Configuration::Configuration() : barriers_(empty_layer()) {}

Configuration Configuration::from_entries(const std::vector<CellEntry> &entries) {
  std::vector<CellEntry> sorted = entries;
  std::stable_sort(sorted.begin(), sorted.end(), entry_less);
  auto layer = std::make_shared<BarrierLayer>();
  Configuration c;
  for (size_t i = 0; i < sorted.size(); ++i) {
    // Later entries for the same cell win.
    if (i + 1 < sorted.size() && sorted[i + 1].first == sorted[i].first) continue;
    const auto &[coord, state] = sorted[i];
    if (state == CellState::kBarrier) {
      layer->cells.insert(coord);
      layer->sorted.push_back(coord);
    } else if (is_signal(state)) {
      c.signals_.push_back(sorted[i]);
    }
  }
  if (!layer->sorted.empty()) c.barriers_ = std::move(layer);
  return c;
}

CellState Configuration::get(const Coord &c) const {
  if (is_barrier(c)) return CellState::kBarrier;
  auto it = std::lower_bound(signals_.begin(), signals_.end(),
                             CellEntry{c, CellState::kEmpty}, entry_less);
  if (it != signals_.end() && it->first == c) return it->second;
  return CellState::kEmpty;
}

void Configuration::set(const Coord &c, CellState s) {
  bool was_barrier = is_barrier(c);
  if (was_barrier != (s == CellState::kBarrier)) {
    if (barriers_.use_count() != 1) barriers_ = std::make_shared<BarrierLayer>(*barriers_);
    BarrierLayer *layer = barriers_.get();
    if (was_barrier) {
      layer->cells.erase(c);
      layer->sorted.erase(std::lower_bound(layer->sorted.begin(), layer->sorted.end(),
                                           c, canonical_less));
    } else {
      layer->cells.insert(c);
      layer->sorted.insert(std::lower_bound(layer->sorted.begin(), layer->sorted.end(),
                                            c, canonical_less),
                           c);
    }
  }
  auto it = std::lower_bound(signals_.begin(), signals_.end(),
                             CellEntry{c, CellState::kEmpty}, entry_less);
  bool present = it != signals_.end() && it->first == c;
  if (is_signal(s)) {
    if (present) {
      it->second = s;
    } else {
      signals_.insert(it, {c, s});
    }
  } else if (present) {
    signals_.erase(it);
  }
}

std::vector<CellEntry> Configuration::entries() const {
  std::vector<CellEntry> out;
  out.reserve(size());
  auto s = signals_.begin();
  for (const Coord &b : barriers_->sorted) {
    while (s != signals_.end() && canonical_less(s->first, b)) out.push_back(*s++);
    out.emplace_back(b, CellState::kBarrier);
  }
  out.insert(out.end(), s, signals_.end());
  return out;
}

Configuration Configuration::with_signals(std::vector<CellEntry> signals) const {
  Configuration c;
  c.barriers_ = barriers_;
  c.signals_ = std::move(signals);
  return c;
}

Configuration Configuration::without_signals() const { return with_signals({}); }

Configuration Configuration::translated(const Coord &delta) const {
  auto layer = std::make_shared<BarrierLayer>();
  layer->sorted.reserve(barriers_->sorted.size());
  for (const Coord &b : barriers_->sorted) {
    layer->sorted.push_back(b + delta);
    layer->cells.insert(b + delta);
  }
  Configuration c;
  c.barriers_ = std::move(layer);
  c.signals_ = signals_;
  for (auto &e : c.signals_) e.first = e.first + delta;
  return c;
}

Configuration Configuration::merged_with(const Configuration &other) const {
  Configuration out = *this;
  if (other.barrier_count() > 0) {
    auto layer = std::make_shared<BarrierLayer>(*barriers_);
    for (const Coord &b : other.barriers()) layer->cells.insert(b);
    layer->sorted.assign(layer->cells.begin(), layer->cells.end());
    std::sort(layer->sorted.begin(), layer->sorted.end(), canonical_less);
    out.barriers_ = std::move(layer);
    std::erase_if(out.signals_, [&](const CellEntry &e) { return other.is_barrier(e.first); });
  }
  for (const auto &[c, s] : other.signals()) out.set(c, s);
  return out;
}

bool operator==(const Configuration &a, const Configuration &b) {
  if (a.signals_ != b.signals_) return false;
  return a.barriers_ == b.barriers_ || a.barriers_->sorted == b.barriers_->sorted;
}

bool operator<(const Configuration &a, const Configuration &b) {
  auto cmp_entries = [](const CellEntry &x, const CellEntry &y) {
    auto c = canonical_compare(x.first, y.first);
    if (c != 0) return c;
    return x.second <=> y.second;
  };
  auto sig = std::lexicographical_compare_three_way(
      a.signals_.begin(), a.signals_.end(), b.signals_.begin(), b.signals_.end(),
      cmp_entries);
  if (sig != 0) return sig < 0;
  if (a.barriers_ == b.barriers_) return false;
  const auto &x = a.barriers_->sorted;
  const auto &y = b.barriers_->sorted;
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end(),
                                                canonical_compare) < 0;
}

std::vector<Coord> active_blocks(const Configuration &c, Parity p) {
  std::vector<Coord> out;
  for (const auto &[coord, state] : c.entries()) out.push_back(block_origin(coord, p));
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Coord> signal_blocks(const Configuration &c, Parity p) {
  std::vector<Coord> out;
  for (const auto &[coord, state] : c.signals()) out.push_back(block_origin(coord, p));
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BlockCells read_block(const Configuration &c, const Coord &origin) {
  auto coords = block_coords(origin);
  BlockCells out{};
  for (int i = 0; i < 4; ++i) out[i] = c.get(coords[i]);
  return out;
}

Configuration write_block(const Configuration &c, const Coord &origin,
                          const BlockCells &cells, Parity p) {
  if (!is_block_origin(origin, p)) {
    throw ParityError("block origin (" + std::to_string(origin.x) + "," +
                      std::to_string(origin.y) + ") is not " +
                      std::string(parity_name(p)));
  }
  Configuration out = c;
  auto coords = block_coords(origin);
  for (int i = 0; i < 4; ++i) out.set(coords[i], cells[i]);
  return out;
}

BoundingBox bounding_box(const Configuration &c) {
  BoundingBox box;
  bool first = true;
  auto add = [&](const Coord &p) {
    if (first) {
      box = {p.x, p.y, p.x, p.y};
      first = false;
      return;
    }
    box.min_x = std::min(box.min_x, p.x);
    box.max_x = std::max(box.max_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_y = std::max(box.max_y, p.y);
  };
  for (const Coord &b : c.barriers()) add(b);
  for (const auto &e : c.signals()) add(e.first);
  return box;
}

Configuration parse_grid_rows(const Coord &top_left,
                              const std::vector<std::string_view> &rows,
                              int first_line_number) {
  std::vector<CellEntry> entries;
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t col = 0; col < rows[r].size(); ++col) {
      auto s = cell_from_char(rows[r][col]);
      if (!s) {
        throw ParseError("line " + std::to_string(first_line_number + r) +
                         ": invalid cell character '" + std::string(1, rows[r][col]) +
                         "'");
      }
      if (*s != CellState::kEmpty) {
        entries.emplace_back(Coord{top_left.x + static_cast<int64_t>(col),
                                   top_left.y - static_cast<int64_t>(r)},
                             *s);
      }
    }
  }
  return Configuration::from_entries(entries);
}

Configuration parse_grid(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("line 1: missing 'offset <x> <y>' header");
  std::istringstream head{std::string(lines[0])};
  std::string word, xs, ys, extra;
  head >> word >> xs >> ys;
  Coord top_left;
  if (word != "offset" || !parse_int(xs, &top_left.x) || !parse_int(ys, &top_left.y) ||
      (head >> extra)) {
    throw ParseError("line 1: expected 'offset <x> <y>'");
  }
  std::vector<std::string_view> rows(lines.begin() + 1, lines.end());
  return parse_grid_rows(top_left, rows, 2);
}

std::string format_grid_window(const Configuration &c, const BoundingBox &box) {
  std::string out = "offset " + std::to_string(box.min_x) + " " + std::to_string(box.max_y) + "\n";
  if (box.empty()) return out;
  for (int64_t y = box.max_y; y >= box.min_y; --y) {
    std::string row;
    for (int64_t x = box.min_x; x <= box.max_x; ++x) row.push_back(cell_char(c.get({x, y})));
    out += row;
    out.push_back('\n');
  }
  return out;
}

std::string format_grid(const Configuration &c) {
  BoundingBox box = bounding_box(c);
  if (box.empty()) return "offset 0 0\n";
  std::vector<std::string> rows(static_cast<size_t>(box.max_y - box.min_y + 1));
  auto put = [&](const Coord &p, CellState s) {
    std::string &row = rows[static_cast<size_t>(box.max_y - p.y)];
    size_t col = static_cast<size_t>(p.x - box.min_x);
    if (row.size() <= col) row.resize(col + 1, '.');
    row[col] = cell_char(s);
  };
  for (const auto &[p, s] : c.entries()) put(p, s);
  std::string out = "offset " + std::to_string(box.min_x) + " " + std::to_string(box.max_y) + "\n";
  for (const auto &row : rows) {
    out += row;
    out.push_back('\n');
  }
  return out;
}

}  // namespace uqca
