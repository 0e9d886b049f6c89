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

#include "uqca/evolution.h"

#include <random>

#include "gtest/gtest.h"
#include "uqca/circuit.h"
#include "uqca/compiler.h"
#include "uqca/error.h"
#include "uqca/tiles.h"

namespace uqca {
namespace {

constexpr CellState E = CellState::kEmpty;
constexpr CellState S0 = CellState::kSig0;
constexpr CellState S1 = CellState::kSig1;
constexpr CellState B = CellState::kBarrier;

Configuration make(std::initializer_list<std::pair<Coord, CellState>> cells) {
  Configuration c;
  for (const auto &[at, s] : cells) c.set(at, s);
  return c;
}

// Two semitransparent barriers on consecutive diagonal blocks.
Configuration double_hadamard(CellState input) {
  return make({{{0, 1}, B}, {{1, 0}, B}, {{1, 2}, B}, {{2, 1}, B}, {{0, 0}, input}});
}

Configuration random_config(std::mt19937_64 &rng, int size, int signals, int barriers) {
  std::uniform_int_distribution<int> pos(0, size - 1);
  std::uniform_int_distribution<int> bit(0, 1);
  Configuration c;
  for (int i = 0; i < barriers; ++i) c.set({pos(rng), pos(rng)}, B);
  for (int i = 0; i < signals; ++i) {
    Coord at{pos(rng), pos(rng)};
    if (c.get(at) == E) c.set(at, bit(rng) ? S1 : S0);
  }
  return c;
}

TEST(evolution, free_signal_moves_diagonally) {
  Superposition psi(make({{{0, 0}, S0}}));
  Superposition one = step(psi);
  EXPECT_EQ(one.time(), 1);
  EXPECT_EQ(one.parity(), Parity::kShifted);
  ASSERT_EQ(one.branch_count(), 1u);
  EXPECT_EQ(one.branches().begin()->first, make({{{1, 1}, S0}}));
  Superposition later = run(psi, 24);
  ASSERT_EQ(later.branch_count(), 1u);
  EXPECT_EQ(later.branches().begin()->first, make({{{24, 24}, S0}}));
  EXPECT_EQ(later.parity(), Parity::kAligned);
  EXPECT_EQ(later.amplitude(make({{{24, 24}, S0}})), Amplitude(1.0));
}

TEST(evolution, vacuum_is_stationary) {
  Superposition psi;
  Superposition out = run(psi, 5);
  ASSERT_EQ(out.branch_count(), 1u);
  EXPECT_TRUE(out.branches().begin()->first.empty());
  EXPECT_EQ(out.branches().begin()->second, Amplitude(1.0));
  EXPECT_EQ(out.parity(), Parity::kShifted);
  EXPECT_EQ(out.time(), 5);
}

TEST(evolution, zero_steps_is_identity) {
  Superposition psi(double_hadamard(S1));
  Superposition out = run(psi, 0);
  EXPECT_EQ(out.branches(), psi.branches());
  EXPECT_EQ(out.time(), 0);
}

TEST(evolution, semitransparent_barrier_splits) {
  Superposition out = step(Superposition(double_hadamard(S1)));
  ASSERT_EQ(out.branch_count(), 2u);
  Configuration base = double_hadamard(S1).without_signals();
  Configuration zero = base, one = base;
  zero.set({1, 1}, S0);
  one.set({1, 1}, S1);
  EXPECT_NEAR(std::abs(out.amplitude(zero) - kInvSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude(one) + kInvSqrt2), 0.0, 1e-15);
}

TEST(evolution, double_hadamard_interferes_exactly) {
  for (CellState in : {S0, S1}) {
    StepOptions opts;
    opts.prune_threshold = 0;
    Superposition out = run(Superposition(double_hadamard(in)), 2, standard_table(), opts);
    ASSERT_EQ(out.branch_count(), 1u);
    Configuration want = double_hadamard(in).without_signals();
    want.set({2, 2}, in);
    EXPECT_NEAR(std::abs(out.amplitude(want) - 1.0), 0.0, 1e-15);
  }
}

TEST(evolution, identity_tile_displaces_by_one_layer) {
  CircuitIR c = parse_circuit("qubits 1\nID 0\n");
  CompiledLayout l = layout_circuit(c);
  Superposition out = run(encode_basis(l, 1), kTileDuration);
  ASSERT_EQ(out.branch_count(), 1u);
  const Configuration &cfg = out.branches().begin()->first;
  EXPECT_EQ(cfg.get(lane_in_port(0) + Coord{14, 14}), S1);
  EXPECT_EQ(cfg.without_signals(), l.machinery.without_signals());
}

TEST(evolution, norm_is_conserved_over_long_runs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    Superposition psi(random_config(rng, 8, 4, 12));
    std::vector<StepTelemetry> tel;
    Superposition out = run(psi, 120, standard_table(), {}, &tel);
    ASSERT_EQ(tel.size(), 120u);
    for (const auto &t : tel) EXPECT_NEAR(t.norm, 1.0, 1e-9);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-9);
  }
}

TEST(evolution, reversal_restores_the_input) {
  std::mt19937_64 rng(11);
  ScatteringTable adj = standard_table().adjoint();
  for (int trial = 0; trial < 5; ++trial) {
    Superposition psi(random_config(rng, 8, 5, 14));
    Superposition fwd = run(psi, 30);
    Superposition back = run_back(fwd, 30, adj);
    EXPECT_EQ(back.time(), 0);
    EXPECT_EQ(back.parity(), Parity::kAligned);
    EXPECT_NEAR(fidelity(psi, back), 1.0, 1e-10);
  }
}

TEST(evolution, support_spreads_at_most_one_cell_per_step) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Configuration c = random_config(rng, 6, 4, 10);
    BoundingBox box = bounding_box(c);
    for (int t : {1, 3, 8}) {
      Superposition out = run(Superposition(c), t);
      for (const auto &[cfg, amp] : out.branches()) {
        for (const auto &e : cfg.entries()) {
          EXPECT_GE(e.first.x, box.min_x - t);
          EXPECT_LE(e.first.x, box.max_x + t);
          EXPECT_GE(e.first.y, box.min_y - t);
          EXPECT_LE(e.first.y, box.max_y + t);
        }
      }
    }
  }
}

TEST(evolution, threads_do_not_change_results) {
  std::mt19937_64 rng(5);
  Superposition psi(random_config(rng, 8, 6, 20));
  StepOptions one, many;
  many.threads = 4;
  Superposition a = run(psi, 20, standard_table(), one);
  Superposition b = run(psi, 20, standard_table(), many);
  EXPECT_EQ(a.branches(), b.branches());
}

TEST(evolution, branch_cap_raises_resource_error) {
  StepOptions opts;
  opts.branch_cap = 1;
  try {
    step(Superposition(double_hadamard(S0)), standard_table(), opts);
    FAIL();
  } catch (const ResourceError &e) {
    EXPECT_EQ(e.kind(), "resource");
  }
}

TEST(evolution, pruning_drops_small_branches) {
  Superposition psi;
  psi.add(make({{{0, 0}, S0}}), 1e-13);
  psi.add(make({{{0, 0}, S1}}), 0.0);
  psi.prune(1e-12);
  EXPECT_EQ(psi.branch_count(), 1u);
  psi.prune(0);
  EXPECT_EQ(psi.branch_count(), 1u);
}

TEST(evolution, branch_dump_round_trips) {
  Superposition psi = run(Superposition(double_hadamard(S1)), 1);
  std::string text = format_branches(psi);
  Superposition back = parse_branches(text, psi.parity(), psi.time());
  EXPECT_EQ(back.branches(), psi.branches());
  EXPECT_EQ(format_branches(back), text);
}

TEST(evolution, inner_product_of_orthogonal_branches) {
  Superposition a(make({{{0, 0}, S0}}));
  Superposition b(make({{{0, 0}, S1}}));
  EXPECT_EQ(inner_product(a, b), Amplitude(0.0));
  EXPECT_EQ(fidelity(a, a), 1.0);
}

TEST(evolution, render_frame_header) {
  Superposition psi = run(Superposition(double_hadamard(S0)), 1);
  std::string frame = render_frame(psi, superposition_box(psi));
  EXPECT_EQ(frame.rfind("frame t=1 parity=shifted branches=2", 0), 0u) << frame;
}

}  // namespace
}  // namespace uqca
