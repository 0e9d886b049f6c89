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

#include <random>

#include "benchmark/benchmark.h"
#include "uqca/circuit.h"
#include "uqca/compiler.h"
#include "uqca/evolution.h"
#include "uqca/scattering.h"
#include "uqca/tiles.h"

namespace uqca {
namespace {

void BM_TableBuild(benchmark::State &state) {
  for (auto _ : state) benchmark::DoNotOptimize(ScatteringTable::build());
}
BENCHMARK(BM_TableBuild);

void BM_FreeSignalSteps(benchmark::State &state) {
  Configuration c;
  for (int i = 0; i < state.range(0); ++i) c.set({4 * i, 0}, CellState::kSig1);
  Superposition psi(c);
  benchmark::DoNotOptimize(standard_table());
  for (auto _ : state) benchmark::DoNotOptimize(run(psi, 24));
  state.SetItemsProcessed(state.iterations() * 24);
}
BENCHMARK(BM_FreeSignalSteps)->Arg(1)->Arg(16)->Arg(256);

void BM_BellCircuit(benchmark::State &state) {
  CompiledLayout l = layout_circuit(parse_circuit("qubits 2\nH 0\nCNOT 0 1\n"));
  StepOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(encode_basis(l, 0), l.total_steps, standard_table(), opts));
  }
  state.SetItemsProcessed(state.iterations() * l.total_steps);
}
BENCHMARK(BM_BellCircuit)->Arg(1)->Arg(4);

void BM_RandomSuperposition(benchmark::State &state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> pos(0, 15), cell(0, 3);
  Superposition psi(Superposition::BranchMap{}, Parity::kAligned, 0);
  while (psi.branch_count() < static_cast<size_t>(state.range(0))) {
    Configuration c;
    for (int k = 0; k < 24; ++k) {
      int s = cell(rng);
      if (s != 0) c.set({pos(rng), pos(rng)}, static_cast<CellState>(s));
    }
    psi.add(c, 1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(step(psi));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RandomSuperposition)->Arg(64)->Arg(1024);

void BM_CompileGhz(benchmark::State &state) {
  CircuitIR c = parse_circuit("qubits 6\nH 0\nCNOT 0 1\nCNOT 1 2\nCNOT 2 3\nCNOT 3 4\nCNOT 4 5\n");
  for (auto _ : state) benchmark::DoNotOptimize(layout_circuit(c));
}
BENCHMARK(BM_CompileGhz);

void BM_VerifyTile(benchmark::State &state) {
  const TileSpec &t = builtin_tile("cphase");
  for (auto _ : state) benchmark::DoNotOptimize(verify_tile(t));
}
BENCHMARK(BM_VerifyTile);

}  // namespace
}  // namespace uqca

BENCHMARK_MAIN();
