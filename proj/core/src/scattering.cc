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

#include "uqca/scattering.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uqca/error.h"

namespace uqca {

namespace {

constexpr double kAmpTolerance = 1e-10;
constexpr double kUnitarityTolerance = 1e-12;

using CS = CellState;
constexpr CS E = CS::kEmpty;
constexpr CS B = CS::kBarrier;

CS sig(int v) { return v ? CS::kSig1 : CS::kSig0; }

bool same_terms(std::vector<BlockTerm> a, std::vector<BlockTerm> b) {
  if (a.size() != b.size()) return false;
  auto by_index = [](const BlockTerm &x, const BlockTerm &y) {
    return pack_block(x.block) < pack_block(y.block);
  };
  std::sort(a.begin(), a.end(), by_index);
  std::sort(b.begin(), b.end(), by_index);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].block != b[i].block || std::abs(a[i].amp - b[i].amp) > kAmpTolerance) {
      return false;
    }
  }
  return true;
}

std::array<std::array<Amplitude, 256>, 256> dense(const ScatteringTable &t) {
  std::array<std::array<Amplitude, 256>, 256> m{};
  for (int in = 0; in < 256; ++in) {
    for (const auto &e : t.row(static_cast<uint8_t>(in))) m[e.out][in] += e.amp;
  }
  return m;
}

}  // namespace

uint8_t pack_block(const BlockBasis &b) {
  return static_cast<uint8_t>((static_cast<int>(b[0]) << 6) | (static_cast<int>(b[1]) << 4) |
                              (static_cast<int>(b[2]) << 2) | static_cast<int>(b[3]));
}

BlockBasis unpack_block(uint8_t index) {
  return {static_cast<CS>((index >> 6) & 3), static_cast<CS>((index >> 4) & 3),
          static_cast<CS>((index >> 2) & 3), static_cast<CS>(index & 3)};
}

BlockBasis rotate_block(const BlockBasis &b, int quarter_turns) {
  int turns = ((quarter_turns % 4) + 4) % 4;
  BlockBasis out = b;
  for (int i = 0; i < turns; ++i) {
    BlockBasis prev = out;
    out[kNE] = prev[kNW];
    out[kSE] = prev[kNE];
    out[kSW] = prev[kSE];
    out[kNW] = prev[kSW];
  }
  return out;
}

std::string block_string(const BlockBasis &b) {
  std::string s(4, '.');
  for (int i = 0; i < 4; ++i) s[i] = cell_char(b[i]);
  return s;
}

std::optional<BlockBasis> parse_block_string(std::string_view text) {
  if (text.size() != 4) return std::nullopt;
  BlockBasis b{};
  for (int i = 0; i < 4; ++i) {
    auto s = cell_from_char(text[i]);
    if (!s) return std::nullopt;
    b[i] = *s;
  }
  return b;
}

std::string format_amplitude(Amplitude a) {
  char buf[96];
  if (a.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.16g", a.real());
  } else {
    std::snprintf(buf, sizeof(buf), "%.16g%+.16gi", a.real(), a.imag());
  }
  return buf;
}

std::vector<RuleGenerator> standard_generators() {
  std::vector<RuleGenerator> g;
  for (int s = 0; s < 2; ++s) {
    std::string v = std::to_string(s);
    g.push_back({"propagate/" + v, {E, E, sig(s), E}, {{{E, sig(s), E, E}, 1.0}}});
    g.push_back({"wall/" + v, {B, sig(s), B, E}, {{{B, E, B, sig(s)}, 1.0}}});
    g.push_back({"wall-return/" + v, {B, E, B, sig(s)}, {{{B, sig(s), B, E}, 1.0}}});
    g.push_back({"pass/" + v, {B, E, sig(s), E}, {{{B, sig(s), E, E}, 1.0}}});
    g.push_back({"pass-mirror/" + v, {B, sig(s), E, E}, {{{B, E, sig(s), E}, 1.0}}});
    double sign = s ? -1.0 : 1.0;
    g.push_back({"semitransparent/" + v,
                 {B, E, sig(s), B},
                 {{{B, sig(0), E, B}, kInvSqrt2}, {{B, sig(1), E, B}, sign * kInvSqrt2}}});
  }
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      Amplitude phase = (x && y) ? kEighthTurn : Amplitude(1.0);
      g.push_back({"cross/" + std::to_string(x) + std::to_string(y),
                   {sig(x), E, sig(y), E},
                   {{{E, sig(y), E, sig(x)}, phase}}});
    }
  }
  return g;
}

ScatteringTable ScatteringTable::from_generators(const std::vector<RuleGenerator> &generators) {
  ScatteringTable t;
  std::array<std::vector<BlockTerm>, 256> claimed;
  for (const auto &gen : generators) {
    double norm = 0;
    for (const auto &o : gen.outputs) norm += std::norm(o.amp);
    if (std::abs(norm - 1.0) > kAmpTolerance) {
      throw ConstructionError("rule '" + gen.name + "' output is not unit norm");
    }
    for (int turn = 0; turn < 4; ++turn) {
      BlockBasis in = rotate_block(gen.input, turn);
      std::vector<BlockTerm> out;
      for (const auto &o : gen.outputs) out.push_back({rotate_block(o.block, turn), o.amp});
      uint8_t idx = pack_block(in);
      if (!t.names_[idx].empty()) {
        if (!same_terms(claimed[idx], out)) {
          throw ConstructionError("rule collision on input " + block_string(in) + ": '" +
                                  t.names_[idx] + "' vs '" + gen.name + "'");
        }
        continue;
      }
      t.names_[idx] = gen.name;
      claimed[idx] = out;
    }
  }
  for (int i = 0; i < 256; ++i) {
    auto idx = static_cast<uint8_t>(i);
    if (t.names_[idx].empty()) {
      t.names_[idx] = "identity";
      t.rows_[idx] = {{idx, 1.0}};
      continue;
    }
    for (const auto &o : claimed[idx]) t.rows_[idx].push_back({pack_block(o.block), o.amp});
    std::sort(t.rows_[idx].begin(), t.rows_[idx].end(),
              [](const Entry &a, const Entry &b) { return a.out < b.out; });
  }

  if (!t.preserves_quiescence()) throw ConstructionError("quiescent block is not fixed");
  auto m = dense(t);
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      Amplitude dot = 0;
      for (int k = 0; k < 256; ++k) dot += std::conj(m[k][a]) * m[k][b];
      if (std::abs(dot - (a == b ? 1.0 : 0.0)) > kUnitarityTolerance) {
        throw ConstructionError(
            "unitarity audit failed at columns " +
            block_string(unpack_block(static_cast<uint8_t>(a))) + ", " +
            block_string(unpack_block(static_cast<uint8_t>(b))));
      }
    }
  }
  return t;
}

ScatteringTable ScatteringTable::build() { return from_generators(standard_generators()); }

const ScatteringTable &standard_table() {
  static const ScatteringTable kTable = ScatteringTable::build();
  return kTable;
}

std::vector<BlockTerm> ScatteringTable::apply(const BlockBasis &b) const {
  std::vector<BlockTerm> out;
  for (const auto &e : rows_[pack_block(b)]) out.push_back({unpack_block(e.out), e.amp});
  return out;
}

bool ScatteringTable::is_identity_row(uint8_t in) const {
  const Row &r = rows_[in];
  return r.size() == 1 && r[0].out == in && std::abs(r[0].amp - 1.0) <= kAmpTolerance;
}

ScatteringTable ScatteringTable::adjoint() const {
  ScatteringTable t;
  for (int in = 0; in < 256; ++in) {
    for (const auto &e : rows_[in]) {
      t.rows_[e.out].push_back({static_cast<uint8_t>(in), std::conj(e.amp)});
    }
  }
  for (int i = 0; i < 256; ++i) {
    std::sort(t.rows_[i].begin(), t.rows_[i].end(),
              [](const Entry &a, const Entry &b) { return a.out < b.out; });
    t.names_[i] = names_[i] == "identity" ? "identity" : "adjoint";
  }
  return t;
}

int ScatteringTable::non_identity_rows() const {
  int n = 0;
  for (int i = 0; i < 256; ++i) n += is_identity_row(static_cast<uint8_t>(i)) ? 0 : 1;
  return n;
}

double ScatteringTable::left_unitarity_residual() const {
  auto m = dense(*this);
  double worst = 0;
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      Amplitude dot = 0;
      for (int k = 0; k < 256; ++k) dot += std::conj(m[k][a]) * m[k][b];
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double ScatteringTable::right_unitarity_residual() const {
  auto m = dense(*this);
  double worst = 0;
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      Amplitude dot = 0;
      for (int k = 0; k < 256; ++k) dot += m[a][k] * std::conj(m[b][k]);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double ScatteringTable::unitarity_residual() const {
  return std::max(left_unitarity_residual(), right_unitarity_residual());
}

bool ScatteringTable::commutes_with_rotation() const {
  for (int i = 0; i < 256; ++i) {
    BlockBasis in = unpack_block(static_cast<uint8_t>(i));
    uint8_t rin = pack_block(rotate_block(in, 1));
    const Row &direct = rows_[rin];
    Row rotated;
    for (const auto &e : rows_[i]) {
      rotated.push_back({pack_block(rotate_block(unpack_block(e.out), 1)), e.amp});
    }
    std::sort(rotated.begin(), rotated.end(),
              [](const Entry &a, const Entry &b) { return a.out < b.out; });
    if (rotated.size() != direct.size()) return false;
    for (size_t k = 0; k < rotated.size(); ++k) {
      if (rotated[k].out != direct[k].out || rotated[k].amp != direct[k].amp) return false;
    }
  }
  return true;
}

bool ScatteringTable::barriers_static() const {
  for (int i = 0; i < 256; ++i) {
    BlockBasis in = unpack_block(static_cast<uint8_t>(i));
    for (const auto &e : rows_[i]) {
      BlockBasis out = unpack_block(e.out);
      for (int c = 0; c < 4; ++c) {
        if ((in[c] == B) != (out[c] == B)) return false;
      }
    }
  }
  return true;
}

bool ScatteringTable::preserves_quiescence() const { return is_identity_row(0); }

std::string ScatteringTable::dump() const {
  std::string out;
  for (int i = 0; i < 256; ++i) {
    auto idx = static_cast<uint8_t>(i);
    if (is_identity_row(idx)) continue;
    out += "IN " + block_string(unpack_block(idx)) + " ->";
    for (size_t k = 0; k < rows_[idx].size(); ++k) {
      if (k > 0) out += " +";
      out += " " + format_amplitude(rows_[idx][k].amp) + " " +
             block_string(unpack_block(rows_[idx][k].out));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace uqca
