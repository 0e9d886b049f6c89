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

// Command-line front end: uqca <subcommand> [options].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "uqca/circuit.h"
#include "uqca/compiler.h"
#include "uqca/error.h"
#include "uqca/evolution.h"
#include "uqca/intrinsic.h"
#include "uqca/lattice.h"
#include "uqca/oracle.h"
#include "uqca/scattering.h"
#include "uqca/tiles.h"

namespace {

using namespace uqca;

class IoError : public Error {
 public:
  explicit IoError(const std::string &m) : Error("io", m) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string &m) : Error("usage", m) {}
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

std::string basis_label(uint64_t x, int qubits) {
  std::string s = "|";
  for (int q = 0; q < qubits; ++q) s.push_back(((x >> (qubits - 1 - q)) & 1) ? '1' : '0');
  return s + ">";
}

uint64_t parse_bits(const std::string &bits, int qubits) {
  if (static_cast<int>(bits.size()) != qubits) {
    throw UsageError("input '" + bits + "' must have " + std::to_string(qubits) + " bits");
  }
  uint64_t x = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw UsageError("input '" + bits + "' is not a bit string");
    x = (x << 1) | static_cast<uint64_t>(c == '1');
  }
  return x;
}

Parity parity_arg(const std::string &s) {
  auto p = parse_parity(s);
  if (!p) throw UsageError("parity must be 'aligned' or 'shifted'");
  return *p;
}

SimRegion region_arg(const std::string &text, const std::string &origin) {
  SimRegion r;
  if (std::sscanf(text.c_str(), "%dx%d", &r.width, &r.height) != 2) {
    throw UsageError("region must look like WxH");
  }
  long long x = 0, y = 0;
  if (!origin.empty() && std::sscanf(origin.c_str(), "%lld,%lld", &x, &y) != 2) {
    throw UsageError("origin must look like x,y");
  }
  r.origin = {x, y};
  return r;
}

StepOptions step_options(std::optional<double> prune, std::optional<size_t> cap, int threads) {
  StepOptions o;
  if (const char *env = std::getenv("UQCA_PRUNE_THRESHOLD")) o.prune_threshold = std::atof(env);
  if (const char *env = std::getenv("UQCA_BRANCH_CAP")) {
    o.branch_cap = static_cast<size_t>(std::strtoull(env, nullptr, 10));
  }
  if (prune) o.prune_threshold = *prune;
  if (cap) o.branch_cap = *cap;
  if (o.prune_threshold < 0 || o.branch_cap == 0) {
    throw UsageError("prune threshold and branch cap must be positive");
  }
  o.threads = threads;
  return o;
}

void print_decoded(const DecodedState &d) {
  for (const auto &[x, a] : d.amps) {
    std::printf("%s %.15f %.15f\n", basis_label(x, d.qubits).c_str(), a.real(), a.imag());
  }
}

Superposition load_state(const std::string &path, Parity parity) {
  std::string text = read_file(path);
  if (text.rfind("amp ", 0) == 0) return parse_branches(text, parity, 0);
  return Superposition(parse_grid(text), parity, 0);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Simulator and compiler for a universal partitioned quantum cellular automaton",
               "uqca"};
  app.require_subcommand(1);

  // run
  auto *run_cmd = app.add_subcommand("run", "Evolve a configuration");
  std::string run_input, run_ports, run_dump, run_encode, run_render = "none", run_parity;
  int64_t run_steps = -1;
  std::optional<double> run_prune;
  std::optional<size_t> run_cap;
  int run_threads = 1;
  bool run_decode = false;
  run_cmd->add_option("--input", run_input, "Grid (.uqca) or branch dump file")->required();
  run_cmd->add_option("--steps", run_steps, "Number of steps (default: ports sidecar or 0)");
  run_cmd->add_option("--parity", run_parity, "Parity of the first step: aligned|shifted");
  run_cmd->add_option("--prune", run_prune, "Drop branches below this amplitude");
  run_cmd->add_option("--cap", run_cap, "Maximum branch count");
  run_cmd->add_option("--render", run_render, "none|frames|final")
      ->check(CLI::IsMember({"none", "frames", "final"}));
  run_cmd->add_option("--dump", run_dump, "Write the final branches to this file");
  run_cmd->add_option("--threads", run_threads, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--ports", run_ports, "Port sidecar written by 'compile'");
  run_cmd->add_option("--encode", run_encode, "Input bit string placed on the in-ports");
  run_cmd->add_flag("--decode", run_decode, "Decode the out-ports after the run");

  // compile
  auto *compile_cmd = app.add_subcommand("compile", "Compile a circuit into a layout");
  std::string compile_circuit, compile_out;
  compile_cmd->add_option("--circuit", compile_circuit, "Circuit file")->required();
  compile_cmd->add_option("--out", compile_out, "Output prefix (default: circuit path stem)");

  // flatten
  auto *flatten_cmd = app.add_subcommand("flatten", "Flatten a simulated PQCA onto the lattice");
  std::string flatten_v, flatten_region = "2x2", flatten_origin, flatten_out;
  int flatten_steps = 1;
  flatten_cmd->add_option("--v", flatten_v, "4-qubit circuit for V")->required();
  flatten_cmd->add_option("--region", flatten_region, "Simulated region WxH");
  flatten_cmd->add_option("--origin", flatten_origin, "Region south-west cell x,y");
  flatten_cmd->add_option("--steps", flatten_steps, "Simulated steps")->check(CLI::NonNegativeNumber);
  flatten_cmd->add_option("--out", flatten_out, "Output prefix");

  // verify-table / dump-table
  auto *verify_table_cmd = app.add_subcommand("verify-table", "Audit the scattering unitary");
  auto *dump_table_cmd = app.add_subcommand("dump-table", "Print non-identity table rows");

  // verify-tiles
  auto *verify_tiles_cmd = app.add_subcommand("verify-tiles", "Simulate and check gate tiles");
  std::vector<std::string> tile_files;
  verify_tiles_cmd->add_option("--tile", tile_files, "Tile files (default: builtin library)");

  // check-intrinsic
  auto *intrinsic_cmd =
      app.add_subcommand("check-intrinsic", "Compare a flattened PQCA with its reference");
  std::string ci_v, ci_region = "2x2", ci_origin;
  int ci_steps = 1, ci_random = 4, ci_threads = 1;
  uint64_t ci_seed = 1;
  double ci_tol = 1e-5;
  intrinsic_cmd->add_option("--v", ci_v, "4-qubit circuit for V")->required();
  intrinsic_cmd->add_option("--region", ci_region, "Simulated region WxH");
  intrinsic_cmd->add_option("--origin", ci_origin, "Region south-west cell x,y");
  intrinsic_cmd->add_option("--steps", ci_steps, "Simulated steps")->check(CLI::NonNegativeNumber);
  intrinsic_cmd->add_option("--seed", ci_seed, "Seed for random test states");
  intrinsic_cmd->add_option("--random", ci_random, "Number of random test states");
  intrinsic_cmd->add_option("--tolerance", ci_tol, "Allowed infidelity");
  intrinsic_cmd->add_option("--threads", ci_threads, "Worker threads")->check(CLI::PositiveNumber);

  // oracle run
  auto *oracle_cmd = app.add_subcommand("oracle", "Dense state-vector oracle");
  oracle_cmd->require_subcommand(1);
  auto *oracle_run_cmd = oracle_cmd->add_subcommand("run", "Apply a circuit to a basis state");
  std::string oracle_circuit, oracle_input;
  oracle_run_cmd->add_option("--circuit", oracle_circuit, "Circuit file")->required();
  oracle_run_cmd->add_option("--input", oracle_input, "Input bit string (default all zero)");

  // render
  auto *render_cmd = app.add_subcommand("render", "Print the grid after some steps");
  std::string render_input, render_out, render_parity = "aligned";
  int64_t render_steps = 0;
  render_cmd->add_option("--input", render_input, "Grid or branch dump file")->required();
  render_cmd->add_option("--steps", render_steps, "Steps to run first")
      ->check(CLI::NonNegativeNumber);
  render_cmd->add_option("--parity", render_parity, "Parity of the first step");
  render_cmd->add_option("--out", render_out, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::fprintf(stderr, "error: usage: %s\n", e.what());
    return 2;
  }

  try {
    if (*run_cmd) {
      std::optional<CompiledLayout> layout;
      Parity parity = run_parity.empty() ? Parity::kAligned : parity_arg(run_parity);
      Superposition psi;
      if (!run_ports.empty()) {
        Configuration machinery = parse_grid(read_file(run_input));
        layout = parse_ports(read_file(run_ports), machinery);
        if (run_parity.empty()) parity = layout->entry_parity;
        if (run_steps < 0) run_steps = layout->total_steps;
        if (run_encode.empty()) run_encode = std::string(layout->qubits, '0');
        layout->entry_parity = parity;
        psi = encode_basis(*layout, parse_bits(run_encode, layout->qubits));
      } else {
        if (!run_encode.empty() || run_decode) throw UsageError("--encode/--decode need --ports");
        psi = load_state(run_input, parity);
      }
      if (run_steps < 0) run_steps = 0;
      StepOptions opts = step_options(run_prune, run_cap, run_threads);
      BoundingBox window;
      StepObserver observer;
      if (run_render == "frames") {
        window = superposition_box(psi);
        window.max_x += run_steps;
        window.max_y += run_steps;
        std::fputs(render_frame(psi, window).c_str(), stdout);
        observer = [&](const Superposition &s) { std::fputs(render_frame(s, window).c_str(), stdout); };
      }
      Superposition out = run(psi, run_steps, standard_table(), opts, nullptr, observer);
      std::printf("steps: %lld\nbranches: %zu\nnorm: %.12f\n", static_cast<long long>(run_steps),
                  out.branch_count(), out.norm_squared());
      if (run_render == "final") std::fputs(format_branches(out).c_str(), stdout);
      if (!run_dump.empty()) write_file(run_dump, format_branches(out));
      if (run_decode) print_decoded(decode_lanes(*layout, out, true));
      return 0;
    }

    if (*compile_cmd) {
      CircuitIR ir = parse_circuit(read_file(compile_circuit));
      CompiledLayout l = layout_circuit(ir);
      std::string prefix = compile_out;
      if (prefix.empty()) {
        prefix = compile_circuit;
        if (auto dot = prefix.rfind('.'); dot != std::string::npos) prefix.resize(dot);
      }
      write_file(prefix + ".uqca", format_grid(l.machinery));
      write_file(prefix + ".ports", format_ports(l));
      std::printf("qubits: %d\nlayers: %d\nsteps: %lld\nbarriers: %zu\nancillas: %zu\n", l.qubits,
                  l.layers, static_cast<long long>(l.total_steps), l.machinery.barrier_count(),
                  l.machinery.signal_count());
      std::printf("wrote: %s.uqca %s.ports\n", prefix.c_str(), prefix.c_str());
      return 0;
    }

    if (*flatten_cmd) {
      ReferencePQCA p = ReferencePQCA::from_circuit(parse_circuit(read_file(flatten_v)));
      FlattenedPQCA f = flatten_pqca(p, region_arg(flatten_region, flatten_origin), flatten_steps);
      std::string prefix = flatten_out;
      if (prefix.empty()) {
        prefix = flatten_v;
        if (auto dot = prefix.rfind('.'); dot != std::string::npos) prefix.resize(dot);
        prefix += ".flat";
      }
      write_file(prefix + ".uqca", format_grid(f.layout.machinery));
      write_file(prefix + ".ports", format_ports(f.layout));
      write_file(prefix + ".coding", format_coding(f.coding));
      std::printf("lanes: %d\nlayers_per_step: %d\nsteps_per_sim_step: %lld\nbarriers: %zu\n",
                  f.layout.qubits, f.coding.layers_per_step,
                  static_cast<long long>(f.coding.steps_per_sim_step),
                  f.layout.machinery.barrier_count());
      std::printf("wrote: %s.uqca %s.ports %s.coding\n", prefix.c_str(), prefix.c_str(),
                  prefix.c_str());
      return 0;
    }

    if (*verify_table_cmd) {
      const ScatteringTable &t = standard_table();
      double residual = t.unitarity_residual();
      std::printf("unitary: residual %.1e; rows: %d\n", residual, t.non_identity_rows());
      std::printf("isotropic: %s\nquiescent: %s\nbarriers static: %s\n",
                  t.commutes_with_rotation() ? "yes" : "no",
                  t.preserves_quiescence() ? "yes" : "no", t.barriers_static() ? "yes" : "no");
      bool ok = residual <= 1e-12 && t.commutes_with_rotation() && t.preserves_quiescence() &&
                t.barriers_static();
      if (!ok) throw VerificationError("scattering table audit failed");
      return 0;
    }

    if (*dump_table_cmd) {
      std::fputs(standard_table().dump().c_str(), stdout);
      return 0;
    }

    if (*verify_tiles_cmd) {
      std::vector<TileSpec> tiles;
      if (tile_files.empty()) {
        for (const auto &[name, t] : builtin_tiles()) tiles.push_back(t);
      } else {
        for (const auto &path : tile_files) tiles.push_back(parse_tile(read_file(path)));
      }
      int failed = 0;
      for (const auto &t : tiles) {
        TileReport r = verify_tile(t);
        std::printf("tile %s: %s gate %s duration %d displacement (%+lld,%+lld) distance %.1e",
                    r.name.c_str(), r.ok ? "PASS" : "FAIL", std::string(gate_name(t.gate)).c_str(),
                    r.duration, static_cast<long long>(r.displacement.x),
                    static_cast<long long>(r.displacement.y), r.gate_distance);
        if (r.ancilla_period > 0) std::printf(" ancilla-period %d", r.ancilla_period);
        std::printf("\n");
        for (const auto &f : r.failures) std::printf("  %s\n", f.c_str());
        failed += r.ok ? 0 : 1;
      }
      if (failed) throw VerificationError(std::to_string(failed) + " tile(s) failed");
      return 0;
    }

    if (*intrinsic_cmd) {
      ReferencePQCA p = ReferencePQCA::from_circuit(parse_circuit(read_file(ci_v)));
      FlattenedPQCA f = flatten_pqca(p, region_arg(ci_region, ci_origin), ci_steps);
      DirectSimulationOptions opts;
      opts.random_states = ci_random;
      opts.seed = ci_seed;
      opts.step.threads = ci_threads;
      DirectSimulationReport r = check_direct_simulation(f, p, ci_steps, opts);
      std::printf("steps: %d\nstates: %d\nmin fidelity: %.12f (%s)\n", r.steps, r.states_tested,
                  r.min_fidelity, r.worst_state.c_str());
      std::printf("residue fidelity: %.12f\nfactor error: %.1e\n", r.min_residue_fidelity,
                  r.max_factor_error);
      for (const auto &msg : r.failures) std::printf("  %s\n", msg.c_str());
      if (!r.ok(ci_tol)) throw VerificationError("direct simulation check failed");
      return 0;
    }

    if (*oracle_run_cmd) {
      CircuitIR ir = parse_circuit(read_file(oracle_circuit));
      uint64_t x = oracle_input.empty() ? 0 : parse_bits(oracle_input, ir.qubits);
      StateVector s = apply_circuit(ir, StateVector::basis(ir.qubits, x));
      for (size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i]) < 1e-15) continue;
        std::printf("%s %.15f %.15f\n", basis_label(i, ir.qubits).c_str(), s[i].real(),
                    s[i].imag());
      }
      return 0;
    }

    if (*render_cmd) {
      Superposition psi = load_state(render_input, parity_arg(render_parity));
      Superposition out = run(psi, render_steps);
      std::string text = out.branch_count() == 1 && std::abs(out.branches().begin()->second - 1.0) < 1e-12
                             ? format_grid(out.branches().begin()->first)
                             : format_branches(out);
      if (render_out.empty()) {
        std::fputs(text.c_str(), stdout);
      } else {
        write_file(render_out, text);
      }
      return 0;
    }
  } catch (const UsageError &e) {
    std::fprintf(stderr, "error: %s: %s\n", e.kind().c_str(), e.what());
    return 2;
  } catch (const Error &e) {
    std::fprintf(stderr, "error: %s: %s\n", e.kind().c_str(), e.what());
    return 1;
  }
  return 0;
}
