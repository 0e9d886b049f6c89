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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "uqca/error.h"

namespace uqca {

namespace {

using Result = std::pair<Configuration, Amplitude>;

struct Partial {
  std::vector<CellEntry> signals;
  Amplitude amp;
};

bool entry_less(const CellEntry &a, const CellEntry &b) {
  return canonical_less(a.first, b.first);
}

// Applies one partition layer to a single basis configuration.
void step_branch(const Configuration &c, Amplitude amp, Parity parity,
                 const ScatteringTable &table, std::vector<Result> *out) {
  const auto &signals = c.signals();
  std::vector<std::pair<Coord, size_t>> keyed;
  keyed.reserve(signals.size());
  for (size_t i = 0; i < signals.size(); ++i) {
    keyed.emplace_back(block_origin(signals[i].first, parity), i);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    if (a.first == b.first) return a.second < b.second;
    return canonical_less(a.first, b.first);
  });

  std::vector<Partial> partials{{{}, amp}};
  partials[0].signals.reserve(signals.size());
  for (size_t g = 0; g < keyed.size();) {
    Coord origin = keyed[g].first;
    auto coords = block_coords(origin);
    BlockCells cells{};
    for (int k = 0; k < 4; ++k) {
      if (c.is_barrier(coords[k])) cells[k] = CellState::kBarrier;
    }
    for (; g < keyed.size() && keyed[g].first == origin; ++g) {
      const auto &[coord, state] = signals[keyed[g].second];
      for (int k = 0; k < 4; ++k) {
        if (coords[k] == coord) cells[k] = state;
      }
    }
    const auto &row = table.row(pack_block(cells));
    if (row.size() == 1) {
      BlockBasis ob = unpack_block(row[0].out);
      for (auto &p : partials) {
        p.amp *= row[0].amp;
        for (int k = 0; k < 4; ++k) {
          if (is_signal(ob[k])) p.signals.emplace_back(coords[k], ob[k]);
        }
      }
      continue;
    }
    std::vector<Partial> next;
    next.reserve(partials.size() * row.size());
    for (const auto &p : partials) {
      for (const auto &e : row) {
        Partial q = p;
        q.amp *= e.amp;
        BlockBasis ob = unpack_block(e.out);
        for (int k = 0; k < 4; ++k) {
          if (is_signal(ob[k])) q.signals.emplace_back(coords[k], ob[k]);
        }
        next.push_back(std::move(q));
      }
    }
    partials = std::move(next);
  }
  for (auto &p : partials) {
    std::sort(p.signals.begin(), p.signals.end(), entry_less);
    out->emplace_back(c.with_signals(std::move(p.signals)), p.amp);
  }
}

Superposition apply_layer(const Superposition &psi, Parity parity, int64_t new_time,
                          Parity new_parity, const ScatteringTable &table,
                          const StepOptions &options) {
  if (!table.barriers_static()) {
    throw IntegrityError("scattering table moves barriers");
  }
  std::vector<const Superposition::BranchMap::value_type *> items;
  items.reserve(psi.branch_count());
  for (const auto &kv : psi.branches()) items.push_back(&kv);

  size_t workers = static_cast<size_t>(std::max(1, options.threads));
  workers = std::min(workers, std::max<size_t>(1, items.size() / 16));
  std::vector<std::vector<Result>> chunks(workers);
  auto work = [&](size_t w) {
    size_t lo = items.size() * w / workers;
    size_t hi = items.size() * (w + 1) / workers;
    for (size_t i = lo; i < hi; ++i) {
      step_branch(items[i]->first, items[i]->second, parity, table, &chunks[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto &t : pool) t.join();
  }

  Superposition::BranchMap merged;
  for (auto &chunk : chunks) {
    for (auto &[c, a] : chunk) {
      auto [it, inserted] = merged.try_emplace(std::move(c), a);
      if (!inserted) it->second += a;
    }
    if (merged.size() > options.branch_cap) {
      throw ResourceError("branch count " + std::to_string(merged.size()) + " exceeds cap " +
                          std::to_string(options.branch_cap));
    }
  }
  Superposition out(std::move(merged), new_parity, new_time);
  out.prune(options.prune_threshold);
  double before = psi.norm_squared();
  double after = out.norm_squared();
  if (std::abs(after - before) > kNormDriftLimit) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "norm drift %.3e at step %lld", after - before,
                  static_cast<long long>(new_time));
    throw IntegrityError(buf);
  }
  return out;
}

}  // namespace

Superposition::Superposition() { branches_.emplace(Configuration(), 1.0); }

Superposition::Superposition(Configuration c, Parity parity, int64_t time)
    : parity_(parity), time_(time) {
  branches_.emplace(std::move(c), 1.0);
}

Superposition::Superposition(BranchMap branches, Parity parity, int64_t time)
    : branches_(std::move(branches)), parity_(parity), time_(time) {}

double Superposition::norm_squared() const {
  double n = 0;
  for (const auto &[c, a] : branches_) n += std::norm(a);
  return n;
}

Amplitude Superposition::amplitude(const Configuration &c) const {
  auto it = branches_.find(c);
  return it == branches_.end() ? Amplitude(0) : it->second;
}

void Superposition::add(const Configuration &c, Amplitude amp) {
  auto [it, inserted] = branches_.try_emplace(c, amp);
  if (!inserted) it->second += amp;
}

void Superposition::prune(double threshold) {
  std::erase_if(branches_, [&](const auto &kv) {
    return kv.second == Amplitude(0) || std::abs(kv.second) < threshold;
  });
}

Superposition step(const Superposition &psi, const ScatteringTable &table,
                   const StepOptions &options) {
  return apply_layer(psi, psi.parity(), psi.time() + 1, flip(psi.parity()), table, options);
}

Superposition step_back(const Superposition &psi, const ScatteringTable &adjoint,
                        const StepOptions &options) {
  Parity p = flip(psi.parity());
  return apply_layer(psi, p, psi.time() - 1, p, adjoint, options);
}

Superposition run(const Superposition &psi, int64_t steps, const ScatteringTable &table,
                  const StepOptions &options, std::vector<StepTelemetry> *telemetry,
                  const StepObserver &observer) {
  if (steps < 0) throw RangeError("negative step count");
  Superposition cur = psi;
  for (int64_t i = 0; i < steps; ++i) {
    cur = step(cur, table, options);
    if (telemetry) telemetry->push_back({cur.time(), cur.branch_count(), cur.norm_squared()});
    if (observer) observer(cur);
  }
  return cur;
}

Superposition run_back(const Superposition &psi, int64_t steps, const ScatteringTable &adjoint,
                       const StepOptions &options) {
  if (steps < 0) throw RangeError("negative step count");
  Superposition cur = psi;
  for (int64_t i = 0; i < steps; ++i) cur = step_back(cur, adjoint, options);
  return cur;
}

Amplitude inner_product(const Superposition &a, const Superposition &b) {
  const auto &small = a.branch_count() <= b.branch_count() ? a : b;
  const auto &large = a.branch_count() <= b.branch_count() ? b : a;
  Amplitude sum = 0;
  for (const auto &[c, amp] : small.branches()) {
    auto it = large.branches().find(c);
    if (it == large.branches().end()) continue;
    sum += &small == &a ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return sum;
}

double fidelity(const Superposition &a, const Superposition &b) {
  return std::abs(inner_product(a, b));
}

std::string format_branches(const Superposition &psi) {
  std::string out;
  char buf[96];
  bool first = true;
  for (const auto &[c, a] : psi.branches()) {
    if (!first) out += "---\n";
    first = false;
    std::snprintf(buf, sizeof(buf), "amp %.17g %.17g\n", a.real(), a.imag());
    out += buf;
    out += format_grid(c);
  }
  return out;
}

Superposition parse_branches(std::string_view text, Parity parity, int64_t time) {
  Superposition::BranchMap branches;
  size_t pos = 0;
  int record = 0;
  while (pos <= text.size()) {
    size_t sep = text.find("---\n", pos);
    while (sep != std::string_view::npos && sep != 0 && text[sep - 1] != '\n') {
      sep = text.find("---\n", sep + 1);
    }
    std::string_view chunk =
        text.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
    ++record;
    size_t nl = chunk.find('\n');
    std::string head(chunk.substr(0, nl));
    double re = 0, im = 0;
    char tail = 0;
    if (std::sscanf(head.c_str(), "amp %lf %lf %c", &re, &im, &tail) != 2) {
      throw ParseError("branch record " + std::to_string(record) + ": expected 'amp <re> <im>'");
    }
    Configuration c =
        parse_grid(nl == std::string_view::npos ? std::string_view() : chunk.substr(nl + 1));
    auto [it, inserted] = branches.try_emplace(std::move(c), Amplitude(re, im));
    if (!inserted) it->second += Amplitude(re, im);
    if (sep == std::string_view::npos) break;
    pos = sep + 4;
  }
  return Superposition(std::move(branches), parity, time);
}

BoundingBox superposition_box(const Superposition &psi) {
  BoundingBox box;
  for (const auto &[c, a] : psi.branches()) {
    BoundingBox b = bounding_box(c);
    if (b.empty()) continue;
    if (box.empty()) {
      box = b;
      continue;
    }
    box.min_x = std::min(box.min_x, b.min_x);
    box.min_y = std::min(box.min_y, b.min_y);
    box.max_x = std::max(box.max_x, b.max_x);
    box.max_y = std::max(box.max_y, b.max_y);
  }
  return box;
}

std::string render_frame(const Superposition &psi, const BoundingBox &window) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "frame t=%lld parity=%s branches=%zu\n",
                static_cast<long long>(psi.time()), std::string(parity_name(psi.parity())).c_str(),
                psi.branch_count());
  std::string out = buf;
  if (window.empty()) return out;
  std::string legend;
  for (int64_t x = window.min_x; x <= window.max_x; ++x) {
    legend.push_back(is_block_origin({x, x}, psi.parity()) ? '[' : ']');
  }
  out += "blocks " + legend + "\n";
  for (const auto &[c, a] : psi.branches()) {
    std::snprintf(buf, sizeof(buf), "amp %.6f %.6f\n", a.real(), a.imag());
    out += buf;
    std::string grid = format_grid_window(c, window);
    out += grid.substr(grid.find('\n') + 1);
  }
  return out;
}

}  // namespace uqca
