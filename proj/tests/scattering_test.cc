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

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gtest/gtest.h"
#include "uqca/error.h"

namespace uqca {
namespace {

constexpr CellState E = CellState::kEmpty;
constexpr CellState S0 = CellState::kSig0;
constexpr CellState S1 = CellState::kSig1;
constexpr CellState B = CellState::kBarrier;

// Geometric classifier used as an independent oracle for every block.
// Corners are (column, row) pairs: NW (0,1), NE (1,1), SW (0,0), SE (1,0).
int opposite(int corner) {
  static const int kOpp[4] = {kSE, kSW, kNE, kNW};
  return kOpp[corner];
}

std::map<uint8_t, Amplitude> oracle_row(const BlockBasis &b) {
  std::vector<int> sig, bar;
  for (int i = 0; i < 4; ++i) {
    if (is_signal(b[i])) sig.push_back(i);
    if (b[i] == B) bar.push_back(i);
  }
  std::map<uint8_t, Amplitude> out;
  auto single = [&](BlockBasis o, Amplitude a) { out[pack_block(o)] += a; };
  if (sig.size() == 1) {
    int p = sig[0];
    CellState v = b[p];
    BlockBasis o = b;
    o[p] = E;
    if (bar.empty() || (bar.size() == 1 && bar[0] != opposite(p))) {
      o[opposite(p)] = v;
      single(o, 1.0);
      return out;
    }
    if (bar.size() == 2) {
      int free = -1;
      for (int i = 0; i < 4; ++i) {
        if (i != p && b[i] == E) free = i;
      }
      if (bar[1] == opposite(bar[0])) {
        const double r = 0.7071067811865476;
        BlockBasis o0 = o, o1 = o;
        o0[free] = S0;
        o1[free] = S1;
        single(o0, r);
        single(o1, v == S1 ? -r : r);
      } else {
        o[free] = v;
        single(o, 1.0);
      }
      return out;
    }
  }
  if (sig.size() == 2 && bar.empty() && sig[1] != opposite(sig[0])) {
    BlockBasis o{E, E, E, E};
    o[opposite(sig[0])] = b[sig[0]];
    o[opposite(sig[1])] = b[sig[1]];
    bool both_one = b[sig[0]] == S1 && b[sig[1]] == S1;
    single(o, both_one ? Amplitude(0.7071067811865476, 0.7071067811865476) : Amplitude(1.0));
    return out;
  }
  single(b, 1.0);
  return out;
}

std::vector<BlockTerm> row_of(const BlockBasis &b) { return standard_table().apply(b); }

TEST(scattering, pack_unpack_round_trip) {
  for (int i = 0; i < 256; ++i) {
    EXPECT_EQ(pack_block(unpack_block(static_cast<uint8_t>(i))), i);
  }
  EXPECT_EQ(pack_block({B, E, E, E}), 0xC0);
  EXPECT_EQ(block_string({B, E, S0, S1}), "#.01");
  EXPECT_EQ(parse_block_string("#.01"), (BlockBasis{B, E, S0, S1}));
  EXPECT_FALSE(parse_block_string("#.0").has_value());
}

TEST(scattering, rotate_block_examples) {
  EXPECT_EQ(rotate_block({B, E, S0, E}, 1), (BlockBasis{S0, B, E, E}));
  EXPECT_EQ(rotate_block({B, E, S0, E}, 2), (BlockBasis{E, S0, E, B}));
  for (int i = 0; i < 256; ++i) {
    BlockBasis b = unpack_block(static_cast<uint8_t>(i));
    EXPECT_EQ(rotate_block(b, 4), b);
    EXPECT_EQ(rotate_block(rotate_block(b, 1), -1), b);
  }
  EXPECT_EQ(rotate_block({E, E, E, E}, 3), (BlockBasis{E, E, E, E}));
}

TEST(scattering, matches_independent_classifier) {
  const ScatteringTable &t = standard_table();
  int non_identity = 0;
  for (int i = 0; i < 256; ++i) {
    BlockBasis b = unpack_block(static_cast<uint8_t>(i));
    auto want = oracle_row(b);
    const auto &row = t.row(static_cast<uint8_t>(i));
    ASSERT_EQ(row.size(), want.size()) << block_string(b);
    for (const auto &e : row) {
      ASSERT_TRUE(want.count(e.out)) << block_string(b);
      EXPECT_LE(std::abs(want[e.out] - e.amp), 1e-15) << block_string(b);
    }
    bool identity = want.size() == 1 && want.begin()->first == i &&
                    std::abs(want.begin()->second - 1.0) < 1e-15;
    non_identity += identity ? 0 : 1;
  }
  EXPECT_EQ(non_identity, 64);
  EXPECT_EQ(t.non_identity_rows(), 64);
}

TEST(scattering, documented_rows) {
  auto r = row_of({E, E, S0, E});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].block, (BlockBasis{E, S0, E, E}));
  EXPECT_EQ(r[0].amp, Amplitude(1.0));

  r = row_of({E, E, E, E});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].block, (BlockBasis{E, E, E, E}));

  r = row_of({B, E, S1, B});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].block, (BlockBasis{B, S0, E, B}));
  EXPECT_EQ(r[0].amp, Amplitude(0.7071067811865476));
  EXPECT_EQ(r[1].block, (BlockBasis{B, S1, E, B}));
  EXPECT_EQ(r[1].amp, Amplitude(-0.7071067811865476));

  r = row_of({S1, E, S1, E});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].block, (BlockBasis{E, S1, E, S1}));
  EXPECT_EQ(r[0].amp, Amplitude(0.7071067811865476, 0.7071067811865476));

  r = row_of({B, E, E, E});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].block, (BlockBasis{B, E, E, E}));

  r = row_of({B, S0, B, E});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].block, (BlockBasis{B, E, B, S0}));

  EXPECT_TRUE(standard_table().is_identity_row(pack_block({S0, E, E, S1})));
  EXPECT_TRUE(standard_table().is_identity_row(pack_block({B, E, E, S0})));
}

TEST(scattering, four_propagation_images) {
  for (CellState s : {S0, S1}) {
    for (int corner = 0; corner < 4; ++corner) {
      BlockBasis in{E, E, E, E};
      in[corner] = s;
      BlockBasis want{E, E, E, E};
      want[opposite(corner)] = s;
      auto r = row_of(in);
      ASSERT_EQ(r.size(), 1u);
      EXPECT_EQ(r[0].block, want);
    }
  }
}

TEST(scattering, unitary_and_isotropic) {
  const ScatteringTable &t = standard_table();
  EXPECT_LE(t.left_unitarity_residual(), 1e-12);
  EXPECT_LE(t.right_unitarity_residual(), 1e-12);
  EXPECT_TRUE(t.commutes_with_rotation());
  EXPECT_TRUE(t.preserves_quiescence());
  EXPECT_TRUE(t.barriers_static());
}

TEST(scattering, every_row_has_unit_norm) {
  for (int i = 0; i < 256; ++i) {
    double n = 0;
    for (const auto &e : standard_table().row(static_cast<uint8_t>(i))) n += std::norm(e.amp);
    EXPECT_NEAR(n, 1.0, 1e-15);
  }
}

TEST(scattering, wall_sectors_are_involutions) {
  for (int turn = 0; turn < 4; ++turn) {
    for (CellState s : {S0, S1}) {
      BlockBasis in = rotate_block({B, s, B, E}, turn);
      auto once = row_of(in);
      ASSERT_EQ(once.size(), 1u);
      EXPECT_NE(once[0].block, in);
      auto twice = row_of(once[0].block);
      ASSERT_EQ(twice.size(), 1u);
      EXPECT_EQ(twice[0].block, in);
      EXPECT_EQ(once[0].amp * twice[0].amp, Amplitude(1.0));
    }
  }
}

TEST(scattering, hadamard_sector_squares_to_identity) {
  for (int turn = 0; turn < 4; ++turn) {
    for (CellState s : {S0, S1}) {
      BlockBasis in = rotate_block({B, E, s, B}, turn);
      std::map<uint8_t, Amplitude> state{{pack_block(in), 1.0}};
      for (int k = 0; k < 2; ++k) {
        std::map<uint8_t, Amplitude> next;
        for (const auto &[b, a] : state) {
          for (const auto &e : standard_table().row(b)) next[e.out] += a * e.amp;
        }
        state = next;
      }
      for (const auto &[b, a] : state) {
        if (b == pack_block(in)) {
          EXPECT_NEAR(std::abs(a - 1.0), 0.0, 1e-15);
        } else {
          EXPECT_NEAR(std::abs(a), 0.0, 1e-15);
        }
      }
    }
  }
}

TEST(scattering, crossing_twice_accumulates_quarter_turn) {
  BlockBasis in{S1, E, S1, E};
  auto once = row_of(in);
  ASSERT_EQ(once.size(), 1u);
  auto twice = row_of(once[0].block);
  ASSERT_EQ(twice.size(), 1u);
  EXPECT_EQ(twice[0].block, in);
  EXPECT_NEAR(std::abs(once[0].amp * twice[0].amp - Amplitude(0, 1)), 0.0, 1e-15);
}

TEST(scattering, adjoint_inverts_rows) {
  const ScatteringTable &t = standard_table();
  ScatteringTable adj = t.adjoint();
  EXPECT_LE(adj.unitarity_residual(), 1e-12);
  for (int i = 0; i < 256; ++i) {
    std::map<uint8_t, Amplitude> acc;
    for (const auto &e : t.row(static_cast<uint8_t>(i))) {
      for (const auto &f : adj.row(e.out)) acc[f.out] += e.amp * f.amp;
    }
    for (const auto &[b, a] : acc) {
      EXPECT_NEAR(std::abs(a - (b == i ? 1.0 : 0.0)), 0.0, 1e-15);
    }
  }
}

TEST(scattering, collision_is_reported_with_both_rules) {
  auto gens = standard_generators();
  gens.push_back({"bogus", {E, E, S0, E}, {{{E, E, E, S0}, 1.0}}});
  try {
    ScatteringTable::from_generators(gens);
    FAIL();
  } catch (const ConstructionError &e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("bogus"), std::string::npos);
    EXPECT_NE(msg.find("propagate"), std::string::npos);
  }
}

TEST(scattering, non_unitary_generators_are_rejected) {
  EXPECT_THROW(ScatteringTable::from_generators({{"merge", {B, E, E, E}, {{{B, B, E, E}, 1.0}}}}),
               ConstructionError);
  EXPECT_THROW(ScatteringTable::from_generators({{"short", {B, E, S0, E}, {{{B, S0, E, E}, 0.5}}}}),
               ConstructionError);
}

TEST(scattering, dump_matches_golden_file) {
  std::ifstream in(std::string(UQCA_SOURCE_DIR) + "/tests/golden/table.txt");
  ASSERT_TRUE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(standard_table().dump(), golden.str());
}

TEST(scattering, amplitude_format) {
  EXPECT_EQ(format_amplitude(1.0), "1");
  EXPECT_EQ(format_amplitude(-kInvSqrt2), "-0.7071067811865476");
  EXPECT_EQ(format_amplitude(kEighthTurn), "0.7071067811865476+0.7071067811865476i");
}

}  // namespace
}  // namespace uqca
