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

#ifndef UQCA_EVOLUTION_H_
#define UQCA_EVOLUTION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "uqca/lattice.h"
#include "uqca/scattering.h"

namespace uqca {

inline constexpr double kDefaultPruneThreshold = 1e-12;
inline constexpr size_t kDefaultBranchCap = size_t{1} << 20;
inline constexpr double kNormDriftLimit = 1e-6;

struct StepOptions {
  double prune_threshold = kDefaultPruneThreshold;
  size_t branch_cap = kDefaultBranchCap;
  int threads = 1;
};

// Sparse vector over finite configurations. `parity` is the partition the
// next step will use; `time` counts applied steps.
class Superposition {
 public:
  using BranchMap = std::map<Configuration, Amplitude>;

  Superposition();  // the vacuum, amplitude 1
  explicit Superposition(Configuration c, Parity parity = Parity::kAligned, int64_t time = 0);
  Superposition(BranchMap branches, Parity parity, int64_t time);

  const BranchMap &branches() const { return branches_; }
  size_t branch_count() const { return branches_.size(); }
  double norm_squared() const;
  Parity parity() const { return parity_; }
  int64_t time() const { return time_; }
  Amplitude amplitude(const Configuration &c) const;

  void add(const Configuration &c, Amplitude amp);
  void prune(double threshold);

 private:
  BranchMap branches_;
  Parity parity_ = Parity::kAligned;
  int64_t time_ = 0;
};

struct StepTelemetry {
  int64_t time = 0;
  size_t branches = 0;
  double norm = 0;
};

Superposition step(const Superposition &psi, const ScatteringTable &table = standard_table(),
                   const StepOptions &options = {});
// Inverts the most recent step given the adjoint table.
Superposition step_back(const Superposition &psi, const ScatteringTable &adjoint,
                        const StepOptions &options = {});

using StepObserver = std::function<void(const Superposition &)>;

Superposition run(const Superposition &psi, int64_t steps,
                  const ScatteringTable &table = standard_table(),
                  const StepOptions &options = {},
                  std::vector<StepTelemetry> *telemetry = nullptr,
                  const StepObserver &observer = nullptr);
Superposition run_back(const Superposition &psi, int64_t steps, const ScatteringTable &adjoint,
                       const StepOptions &options = {});

Amplitude inner_product(const Superposition &a, const Superposition &b);
double fidelity(const Superposition &a, const Superposition &b);

// `---` separated records of `amp <re> <im>` followed by grid text.
std::string format_branches(const Superposition &psi);
Superposition parse_branches(std::string_view text, Parity parity = Parity::kAligned,
                             int64_t time = 0);

BoundingBox superposition_box(const Superposition &psi);
std::string render_frame(const Superposition &psi, const BoundingBox &window);

}  // namespace uqca

#endif  // UQCA_EVOLUTION_H_
