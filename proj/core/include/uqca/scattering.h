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

#ifndef UQCA_SCATTERING_H_
#define UQCA_SCATTERING_H_

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uqca/lattice.h"

namespace uqca {

using Amplitude = std::complex<double>;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline const Amplitude kEighthTurn{kInvSqrt2, kInvSqrt2};  // e^{i pi/4}

using BlockBasis = BlockCells;

// 2 bits per cell, NW most significant.
uint8_t pack_block(const BlockBasis &b);
BlockBasis unpack_block(uint8_t index);
// Quarter turns clockwise: NW -> NE -> SE -> SW -> NW.
BlockBasis rotate_block(const BlockBasis &b, int quarter_turns);
std::string block_string(const BlockBasis &b);
std::optional<BlockBasis> parse_block_string(std::string_view text);

struct BlockTerm {
  BlockBasis block{};
  Amplitude amp;
};

struct RuleGenerator {
  std::string name;
  BlockBasis input{};
  std::vector<BlockTerm> outputs;
};

// Generators before rotation closure: propagation, wall bounce, single barrier
// pass, semitransparent barrier and crossing.
std::vector<RuleGenerator> standard_generators();

std::string format_amplitude(Amplitude a);

class ScatteringTable {
 public:
  struct Entry {
    uint8_t out;
    Amplitude amp;
  };
  using Row = std::vector<Entry>;

  // Standard table; throws ConstructionError if any audit fails.
  static ScatteringTable build();
  // Closes `generators` under rotation, completes with the identity and audits
  // collisions, unitarity and quiescence.
  static ScatteringTable from_generators(const std::vector<RuleGenerator> &generators);

  const Row &row(uint8_t in) const { return rows_[in]; }
  std::vector<BlockTerm> apply(const BlockBasis &b) const;
  bool is_identity_row(uint8_t in) const;
  bool is_deterministic(uint8_t in) const { return rows_[in].size() == 1; }
  const std::string &rule_name(uint8_t in) const { return names_[in]; }

  ScatteringTable adjoint() const;

  int non_identity_rows() const;
  // max |(M^dag M - I)_ij| and max |(M M^dag - I)_ij|.
  double left_unitarity_residual() const;
  double right_unitarity_residual() const;
  double unitarity_residual() const;
  bool commutes_with_rotation() const;
  bool barriers_static() const;
  bool preserves_quiescence() const;

  // One line per non-identity row, `IN <in> -> <amp> <out> [+ <amp> <out>]`.
  std::string dump() const;

 private:
  std::array<Row, 256> rows_;
  std::array<std::string, 256> names_;
};

// Lazily built standard table shared by the library.
const ScatteringTable &standard_table();

}  // namespace uqca

#endif  // UQCA_SCATTERING_H_
