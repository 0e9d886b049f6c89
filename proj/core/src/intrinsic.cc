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

#include "uqca/intrinsic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>

#include "uqca/error.h"
#include "uqca/tiles.h"

namespace uqca {

namespace {

constexpr double kQuiescenceTolerance = 1e-12;

std::vector<Coord> sorted_unique(std::vector<Coord> v) {
  std::sort(v.begin(), v.end(), canonical_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Parity parity_after(Parity start, int steps) {
  return steps % 2 == 0 ? start : flip(start);
}

// Lane order placing each block's cells NW, NE, SW, SE on consecutive lanes,
// followed by the uninvolved cells.
std::vector<Coord> grouping(const std::vector<Coord> &blocks, const std::vector<Coord> &cells) {
  std::vector<Coord> order;
  std::set<std::pair<int64_t, int64_t>> taken;
  for (const Coord &b : blocks) {
    for (const Coord &c : block_coords(b)) {
      order.push_back(c);
      taken.insert({c.x, c.y});
    }
  }
  for (const Coord &c : cells) {
    if (!taken.count({c.x, c.y})) order.push_back(c);
  }
  return order;
}

// Odd-even transposition sort from `from` to `to`, one layer per round.
std::vector<std::vector<GateOp>> permutation_layers(const std::vector<Coord> &from,
                                                    const std::vector<Coord> &to) {
  std::vector<size_t> target(from.size());
  for (size_t i = 0; i < from.size(); ++i) {
    target[i] = static_cast<size_t>(std::find(to.begin(), to.end(), from[i]) - to.begin());
  }
  std::vector<std::vector<GateOp>> layers;
  for (size_t round = 0, idle = 0; idle < 2; ++round) {
    std::vector<GateOp> layer;
    for (size_t i = round % 2; i + 1 < target.size(); i += 2) {
      if (target[i] > target[i + 1]) {
        std::swap(target[i], target[i + 1]);
        layer.push_back(gate2(GateKind::kSWAP, static_cast<int>(i), static_cast<int>(i + 1)));
      }
    }
    if (layer.empty()) {
      ++idle;
    } else {
      idle = 0;
      layers.push_back(std::move(layer));
    }
  }
  return layers;
}

}  // namespace

ReferencePQCA ReferencePQCA::from_circuit(const CircuitIR &v) {
  if (v.qubits != 4) throw ConstructionError("V must act on 4 qubits (NW, NE, SW, SE)");
  v.validate();
  ReferencePQCA p{v, circuit_unitary(v)};
  if (!p.matrix.is_unitary(1e-12)) throw ConstructionError("V is not unitary");
  for (size_t r = 0; r < p.matrix.dim(); ++r) {
    Amplitude want = r == 0 ? 1.0 : 0.0;
    if (std::abs(p.matrix.at(r, 0) - want) > kQuiescenceTolerance) {
      throw ConstructionError("V does not preserve quiescence");
    }
  }
  return p;
}

SimConfiguration SimConfiguration::of(std::vector<Coord> cells) {
  return SimConfiguration{sorted_unique(std::move(cells))};
}

SimConfiguration SimConfiguration::translated(const Coord &delta) const {
  SimConfiguration s = *this;
  for (auto &c : s.ones) c = c + delta;
  return s;
}

bool operator<(const SimConfiguration &a, const SimConfiguration &b) {
  return std::lexicographical_compare_three_way(a.ones.begin(), a.ones.end(), b.ones.begin(),
                                                b.ones.end(), canonical_compare) < 0;
}

double SimSuperposition::norm_squared() const {
  double n = 0;
  for (const auto &[c, a] : branches) n += std::norm(a);
  return n;
}

SimSuperposition SimSuperposition::translated(const Coord &delta) const {
  SimSuperposition s;
  s.parity = parity;
  s.time = time;
  for (const auto &[c, a] : branches) s.branches.emplace(c.translated(delta), a);
  return s;
}

Amplitude inner_product(const SimSuperposition &a, const SimSuperposition &b) {
  Amplitude sum = 0;
  for (const auto &[c, amp] : a.branches) {
    auto it = b.branches.find(c);
    if (it != b.branches.end()) sum += std::conj(amp) * it->second;
  }
  return sum;
}

double fidelity(const SimSuperposition &a, const SimSuperposition &b) {
  return std::abs(inner_product(a, b));
}

SimSuperposition reference_step(const ReferencePQCA &p, const SimSuperposition &psi,
                                double prune_threshold) {
  SimSuperposition out;
  out.parity = flip(psi.parity);
  out.time = psi.time + 1;
  for (const auto &[config, amp] : psi.branches) {
    std::vector<Coord> origins;
    for (const Coord &c : config.ones) origins.push_back(block_origin(c, psi.parity));
    origins = sorted_unique(std::move(origins));
    std::vector<std::pair<std::vector<Coord>, Amplitude>> partial{{{}, amp}};
    for (const Coord &o : origins) {
      auto coords = block_coords(o);
      size_t in = 0;
      for (int k = 0; k < 4; ++k) {
        if (std::binary_search(config.ones.begin(), config.ones.end(), coords[k], canonical_less)) {
          in |= size_t{1} << (3 - k);
        }
      }
      std::vector<std::pair<std::vector<Coord>, Amplitude>> next;
      for (size_t r = 0; r < 16; ++r) {
        Amplitude m = p.matrix.at(r, in);
        if (m == Amplitude(0)) continue;
        for (const auto &[cells, a] : partial) {
          auto grown = cells;
          for (int k = 0; k < 4; ++k) {
            if ((r >> (3 - k)) & 1) grown.push_back(coords[k]);
          }
          next.emplace_back(std::move(grown), a * m);
        }
      }
      partial = std::move(next);
    }
    for (auto &[cells, a] : partial) out.branches[SimConfiguration::of(std::move(cells))] += a;
  }
  std::erase_if(out.branches, [&](const auto &kv) {
    return kv.second == Amplitude(0) || std::abs(kv.second) < prune_threshold;
  });
  return out;
}

SimSuperposition reference_run(const ReferencePQCA &p, const SimSuperposition &psi, int steps) {
  SimSuperposition cur = psi;
  for (int i = 0; i < steps; ++i) cur = reference_step(p, cur);
  return cur;
}

std::vector<Coord> SimRegion::cells() const {
  std::vector<Coord> out;
  for (int y = height - 1; y >= 0; --y) {
    for (int x = 0; x < width; ++x) out.push_back(origin + Coord{x, y});
  }
  return out;
}

FlattenedPQCA flatten_pqca(const ReferencePQCA &p, const SimRegion &region, int sim_steps,
                           Parity sim_parity) {
  if (region.width < 1 || region.height < 1 ||
      region.width * region.height > kMaxFlattenRegionCells) {
    throw ResourceError("region must hold between 1 and " +
                        std::to_string(kMaxFlattenRegionCells) + " cells");
  }
  if (sim_steps < 0) throw RangeError("negative simulated step count");

  std::vector<std::vector<Coord>> blocks(static_cast<size_t>(sim_steps) + 1);
  std::vector<Coord> cells = region.cells();
  for (int k = 1; k <= sim_steps; ++k) {
    Parity par = parity_after(sim_parity, k - 1);
    std::vector<Coord> origins;
    for (const Coord &c : cells) origins.push_back(block_origin(c, par));
    blocks[k] = sorted_unique(std::move(origins));
    std::vector<Coord> grown = cells;
    for (const Coord &o : blocks[k]) {
      for (const Coord &c : block_coords(o)) grown.push_back(c);
    }
    cells = sorted_unique(std::move(grown));
  }
  if (cells.size() > kMaxFlattenLanes) {
    throw ResourceError("light cone needs " + std::to_string(cells.size()) + " lanes (cap " +
                        std::to_string(kMaxFlattenLanes) + ")");
  }
  const int lanes = static_cast<int>(cells.size());

  CircuitIR v = route_circuit(p.v);
  FlattenedPQCA f;
  IsometricCoding &coding = f.coding;
  coding.region = region;
  coding.sim_parity = sim_parity;
  coding.sim_steps = sim_steps;
  coding.v_layers = static_cast<int>(v.layers.size());
  coding.lane_cells.push_back(sim_steps >= 1 ? grouping(blocks[1], cells) : cells);

  std::vector<std::vector<std::vector<GateOp>>> perms;
  for (int k = 1; k <= sim_steps; ++k) {
    std::vector<Coord> target = grouping(blocks[k], cells);
    perms.push_back(permutation_layers(coding.lane_cells.back(), target));
    coding.permutation_layers =
        std::max(coding.permutation_layers, static_cast<int>(perms.back().size()));
    coding.lane_cells.push_back(std::move(target));
  }
  coding.layers_per_step = std::max(1, coding.permutation_layers + coding.v_layers);
  coding.steps_per_sim_step = int64_t{kTileDuration} * coding.layers_per_step;
  coding.supercell_width = int64_t{kLaneWidth} * lanes;
  coding.supercell_height = int64_t{kLayerAdvance} * coding.layers_per_step;

  f.circuit.qubits = lanes;
  for (int k = 1; k <= sim_steps; ++k) {
    size_t start = f.circuit.layers.size();
    for (auto &layer : perms[k - 1]) f.circuit.layers.push_back(std::move(layer));
    f.circuit.layers.resize(start + coding.permutation_layers);
    for (const auto &vlayer : v.layers) {
      std::vector<GateOp> layer;
      for (size_t b = 0; b < blocks[k].size(); ++b) {
        int base = static_cast<int>(4 * b);
        for (GateOp g : vlayer) {
          g.targets[0] += base;
          if (g.arity() == 2) g.targets[1] += base;
          layer.push_back(g);
        }
      }
      f.circuit.layers.push_back(std::move(layer));
    }
    f.circuit.layers.resize(start + coding.layers_per_step);
  }
  f.layout = layout_circuit(f.circuit);
  if (f.layout.layers != coding.layers_per_step * sim_steps) {
    throw LayoutError("flattened layout changed its layer count during routing");
  }
  return f;
}

Superposition encode_sim(const FlattenedPQCA &f, const SimSuperposition &psi) {
  const auto &lanes = f.coding.lane_cells.front();
  const int n = static_cast<int>(lanes.size());
  std::map<uint64_t, Amplitude> amps;
  for (const auto &[config, a] : psi.branches) {
    uint64_t bits = 0;
    for (const Coord &c : config.ones) {
      auto it = std::find(lanes.begin(), lanes.end(), c);
      if (it == lanes.end()) {
        throw RangeError("cell (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                         ") lies outside the coded region");
      }
      bits |= uint64_t{1} << (n - 1 - (it - lanes.begin()));
    }
    amps[bits] += a;
  }
  return encode_sparse(f.layout, amps);
}

SimDecoded decode_sim(const FlattenedPQCA &f, const Superposition &psi) {
  const int64_t t = f.coding.steps_per_sim_step;
  if (psi.time() % t != 0 || psi.time() / t > f.coding.sim_steps) {
    throw RangeError("time " + std::to_string(psi.time()) + " is not a simulated step boundary");
  }
  int k = static_cast<int>(psi.time() / t);
  DecodedState d = decode_lanes(f.layout, psi, false);
  const auto &lanes = f.coding.lane_cells[static_cast<size_t>(k)];
  const int n = static_cast<int>(lanes.size());
  SimDecoded out;
  out.state.parity = parity_after(f.coding.sim_parity, k);
  out.state.time = k;
  for (const auto &[bits, a] : d.amps) {
    std::vector<Coord> ones;
    for (int i = 0; i < n; ++i) {
      if ((bits >> (n - 1 - i)) & 1) ones.push_back(lanes[i]);
    }
    out.state.branches[SimConfiguration::of(std::move(ones))] += a;
  }
  out.residue = std::move(d.residue);
  out.factor_error = d.factor_error;
  return out;
}

std::vector<SimSuperposition> direct_simulation_states(const SimRegion &region, int random_states,
                                                       uint64_t seed, Parity parity) {
  std::vector<Coord> cells = region.cells();
  const size_t n = cells.size();
  std::vector<SimSuperposition> out;
  auto basis = [&](std::vector<Coord> ones) {
    SimSuperposition s;
    s.parity = parity;
    s.branches.emplace(SimConfiguration::of(std::move(ones)), 1.0);
    out.push_back(std::move(s));
  };
  basis({});
  for (size_t i = 0; i < n; ++i) basis({cells[i]});
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) basis({cells[i], cells[j]});
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int r = 0; r < random_states; ++r) {
    SimSuperposition s;
    s.parity = parity;
    double norm = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      std::vector<Coord> ones;
      for (size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) ones.push_back(cells[i]);
      }
      Amplitude a{gauss(rng), gauss(rng)};
      norm += std::norm(a);
      s.branches.emplace(SimConfiguration::of(std::move(ones)), a);
    }
    for (auto &[c, a] : s.branches) a /= std::sqrt(norm);
    out.push_back(std::move(s));
  }
  return out;
}

DirectSimulationReport check_direct_simulation(const FlattenedPQCA &f, const ReferencePQCA &p,
                                               int steps, const DirectSimulationOptions &options) {
  if (steps < 0 || steps > f.coding.sim_steps) {
    throw RangeError("layout was flattened for " + std::to_string(f.coding.sim_steps) +
                     " simulated steps");
  }
  DirectSimulationReport report;
  report.steps = steps;
  auto states = direct_simulation_states(f.coding.region, options.random_states, options.seed,
                                         f.coding.sim_parity);
  std::optional<Superposition> first_residue;
  for (size_t s = 0; s < states.size(); ++s) {
    const SimSuperposition &psi = states[s];
    std::string label = "state " + std::to_string(s);
    try {
      SimSuperposition expected = reference_run(p, psi, steps);
      Superposition universal =
          run(encode_sim(f, psi), steps * f.coding.steps_per_sim_step, standard_table(),
              options.step);
      SimDecoded got = decode_sim(f, universal);
      double fid = fidelity(expected, got.state);
      if (report.worst_state.empty() || fid < report.min_fidelity) {
        report.min_fidelity = fid;
        report.worst_state = label;
      }
      report.max_factor_error = std::max(report.max_factor_error, got.factor_error);
      if (!first_residue) {
        first_residue = got.residue;
      } else {
        report.min_residue_fidelity =
            std::min(report.min_residue_fidelity, fidelity(*first_residue, got.residue));
      }
    } catch (const Error &e) {
      report.failures.push_back(label + ": " + e.kind() + ": " + e.what());
      report.min_fidelity = 0;
    }
    ++report.states_tested;
  }
  return report;
}

std::string format_coding(const IsometricCoding &c) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "region %lld %lld %d %d\n",
                static_cast<long long>(c.region.origin.x),
                static_cast<long long>(c.region.origin.y), c.region.width, c.region.height);
  out += buf;
  out += "sim_parity " + std::string(parity_name(c.sim_parity)) + "\n";
  out += "sim_steps " + std::to_string(c.sim_steps) + "\n";
  out += "layers_per_step " + std::to_string(c.layers_per_step) + "\n";
  out += "steps_per_sim_step " + std::to_string(c.steps_per_sim_step) + "\n";
  out += "supercell " + std::to_string(c.supercell_width) + " " +
         std::to_string(c.supercell_height) + "\n";
  out += "lanes " + std::to_string(c.lane_cells.empty() ? 0 : c.lane_cells[0].size()) + "\n";
  for (size_t k = 0; k < c.lane_cells.size(); ++k) {
    for (size_t i = 0; i < c.lane_cells[k].size(); ++i) {
      std::snprintf(buf, sizeof(buf), "lane %zu %zu %lld %lld\n", k, i,
                    static_cast<long long>(c.lane_cells[k][i].x),
                    static_cast<long long>(c.lane_cells[k][i].y));
      out += buf;
    }
  }
  return out;
}

std::string format_sim_state(const SimSuperposition &s) {
  std::string out;
  char buf[96];
  for (const auto &[c, a] : s.branches) {
    std::snprintf(buf, sizeof(buf), "amp %.12f %.12f :", a.real(), a.imag());
    out += buf;
    for (const Coord &p : c.ones) {
      out += " (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace uqca
