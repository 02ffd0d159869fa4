// Copyright 2026 The rpelab Authors
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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rpelab/circuit.hpp"
#include "rpelab/errors.hpp"
#include "rpelab/hamiltonian.hpp"
#include "rpelab/manifest.hpp"
#include "rpelab/numerics.hpp"
#include "rpelab/parallel.hpp"
#include "rpelab/robustness.hpp"
#include "rpelab/rpe.hpp"

namespace {

using namespace rpelab;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSelfCheck = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumOpts {
  std::string hamiltonian;
  std::string manifest = "spectrum_manifest.json";
};

int run_spectrum(const SpectrumOpts& o) {
  const PauliHamiltonian h = parse_hamiltonian_file(o.hamiltonian);
  const Spectrum spec = spectrum(h);
  std::cout << "n_qubits " << h.n_qubits << "\n";
  for (int i = 0; i < spec.dim(); ++i) {
    std::cout << "eigenvalue " << fmt(spec.eigenvalues[i]) << "\n";
  }
  std::cout << "trace " << fmt(trace(h)) << "\n";

  RunManifest m;
  m.command = "spectrum";
  m.inputs["hamiltonian"] = o.hamiltonian;
  m.parameters = {{"manifest", o.manifest}};
  write_manifest(m, o.manifest);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rpe
// ---------------------------------------------------------------------------

struct RpeOpts {
  std::string hamiltonian;
  int pair_a = 0;
  int pair_b = 1;
  int generations = 6;
  bool exact = true;
  std::int64_t shots = 1024;
  std::uint64_t seed = 0;
  std::string tau = "auto";
  std::string out = "rpe_result";
  std::string manifest;  // defaults to <out>.manifest.json
};

double resolve_tau(const std::string& text, const Spectrum& spec) {
  if (text == "auto") return auto_tau(spec);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error("tau must be 'auto' or a positive real");
  }
  if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw Error("tau must be 'auto' or a positive real");
  }
  return v;
}

nlohmann::json result_to_json(const RpeResult& r, const RpeConfig& c) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : r.generations) {
    gens.push_back({{"g", g.g},
                    {"k", g.k},
                    {"p_cos", g.p_cos},
                    {"p_sin", g.p_sin},
                    {"lambda", g.lambda},
                    {"theta", g.theta},
                    {"degenerate", g.degenerate}});
  }
  return {{"config",
           {{"pair", {c.index_a, c.index_b}},
            {"generations", c.generations},
            {"mode", c.mode == RpeMode::Exact ? "exact" : "sampled"},
            {"shots", c.shots},
            {"seed", c.seed},
            {"tau", c.tau}}},
          {"generations", gens},
          {"theta_final", r.theta_final},
          {"energy_difference", r.energy_difference}};
}

void write_generation_csv(const RpeResult& r, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << "g,k,p_cos,p_sin,lambda,theta\n";
  for (const auto& g : r.generations) {
    os << g.g << "," << g.k << "," << fmt(g.p_cos) << "," << fmt(g.p_sin)
       << "," << fmt(g.lambda) << "," << fmt(g.theta) << "\n";
  }
}

int run_rpe_cmd(const RpeOpts& o) {
  const PauliHamiltonian h = parse_hamiltonian_file(o.hamiltonian);
  const Spectrum spec = spectrum(h);
  RpeConfig config;
  config.index_a = o.pair_a;
  config.index_b = o.pair_b;
  config.generations = o.generations;
  config.mode = o.exact ? RpeMode::Exact : RpeMode::Sampled;
  config.shots = o.shots;
  config.seed = o.seed;
  config.tau = resolve_tau(o.tau, spec);

  const RpeResult result = run_rpe(h, config);

  const std::string manifest_path =
      o.manifest.empty() ? o.out + ".manifest.json" : o.manifest;
  {
    std::ofstream os(o.out + ".json");
    if (!os) throw Error("cannot write " + o.out + ".json");
    os << result_to_json(result, config).dump(2) << "\n";
  }
  write_generation_csv(result, o.out + ".csv");

  RunManifest m;
  m.command = "rpe";
  m.inputs["hamiltonian"] = o.hamiltonian;
  m.seed = o.seed;
  m.parameters = {{"pair_a", o.pair_a},
                  {"pair_b", o.pair_b},
                  {"generations", o.generations},
                  {"mode", o.exact ? "exact" : "sampled"},
                  {"shots", o.shots},
                  {"tau", o.tau},
                  {"tau_resolved", config.tau},
                  {"out", o.out},
                  {"manifest", manifest_path}};
  write_manifest(m, manifest_path);

  std::cout << "theta_final " << fmt(result.theta_final) << "\n";
  std::cout << "energy_difference " << fmt(result.energy_difference) << "\n";
  if (result.any_degenerate && config.mode == RpeMode::Exact) {
    std::cerr << "error: degenerate probabilities in exact mode; phase "
                 "unidentifiable\n";
    return kExitSelfCheck;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// scaling
// ---------------------------------------------------------------------------

struct ScalingOpts {
  std::string hamiltonian;
  int pair_a = 0;
  int pair_b = 1;
  int trials = 50;
  int generations = 8;
  bool exact = false;
  std::int64_t shots = 1024;
  std::uint64_t seed = 0;
  std::string tau = "auto";
  std::string out = "scaling.csv";
  std::string manifest;
};

int run_scaling(const ScalingOpts& o) {
  if (o.trials < 1) throw Error("trials must be positive");
  const PauliHamiltonian h = parse_hamiltonian_file(o.hamiltonian);
  const Spectrum spec = spectrum(h);
  const double tau = resolve_tau(o.tau, spec);
  if (o.pair_a < 0 || o.pair_a >= spec.dim() || o.pair_b < 0 ||
      o.pair_b >= spec.dim()) {
    throw IndexOutOfRange("pair index outside the spectrum");
  }
  const double theta_true = std::fmod(
      tau * (spec.eigenvalues[o.pair_b] - spec.eigenvalues[o.pair_a]),
      2.0 * std::numbers::pi);

  std::vector<std::vector<double>> errors(
      o.trials, std::vector<double>(o.generations, 0.0));
  parallel_for(o.trials, [&](int t) {
    RpeConfig config;
    config.index_a = o.pair_a;
    config.index_b = o.pair_b;
    config.generations = o.generations;
    config.mode = o.exact ? RpeMode::Exact : RpeMode::Sampled;
    config.shots = o.shots;
    config.seed = o.seed ^ (0x9E3779B97F4A7C15ULL *
                            static_cast<std::uint64_t>(t + 1));
    config.tau = tau;
    const RpeResult r = run_rpe(h, config);
    for (int g = 0; g < o.generations; ++g) {
      errors[t][g] =
          std::abs(circle_distance(r.generations[g].theta, theta_true));
    }
  });

  std::ofstream os(o.out);
  if (!os) throw Error("cannot write " + o.out);
  os << "trial,g,abs_error\n";
  for (int t = 0; t < o.trials; ++t) {
    for (int g = 0; g < o.generations; ++g) {
      os << t << "," << g << "," << fmt(errors[t][g]) << "\n";
    }
  }
  os.close();

  const std::string manifest_path =
      o.manifest.empty() ? o.out + ".manifest.json" : o.manifest;
  RunManifest m;
  m.command = "scaling";
  m.inputs["hamiltonian"] = o.hamiltonian;
  m.seed = o.seed;
  m.parameters = {{"pair_a", o.pair_a},       {"pair_b", o.pair_b},
                  {"trials", o.trials},       {"generations", o.generations},
                  {"mode", o.exact ? "exact" : "sampled"},
                  {"shots", o.shots},         {"tau", o.tau},
                  {"tau_resolved", tau},      {"out", o.out},
                  {"manifest", manifest_path}};
  write_manifest(m, manifest_path);

  if (o.exact) {
    std::cout << "slope exact\n";
    return kExitOk;
  }
  std::vector<double> medians(o.generations);
  for (int g = 0; g < o.generations; ++g) {
    std::vector<double> col(o.trials);
    for (int t = 0; t < o.trials; ++t) col[t] = errors[t][g];
    std::sort(col.begin(), col.end());
    const int n = o.trials;
    medians[g] = n % 2 == 1 ? col[n / 2]
                            : 0.5 * (col[n / 2 - 1] + col[n / 2]);
    medians[g] = std::max(medians[g], 1e-18);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int g = 0; g < o.generations; ++g) {
    const double y = std::log2(medians[g]);
    sx += g;
    sy += y;
    sxx += static_cast<double>(g) * g;
    sxy += g * y;
  }
  const double n = o.generations;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  std::cout << "slope " << fmt(slope) << "\n";
  std::cout << "median_final " << fmt(medians[o.generations - 1]) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// robustness
// ---------------------------------------------------------------------------

struct RobustnessOpts {
  int grid = 201;
  double max_eps = 0.5;
  std::string out = "robustness.csv";
  std::string manifest;
};

std::string contour_path_for(const std::string& out) {
  const auto dot = out.rfind('.');
  if (dot == std::string::npos) return out + "_contour";
  return out.substr(0, dot) + "_contour" + out.substr(dot);
}

// First axis value whose bound reaches pi/3, linearly interpolated.
double axis_crossing(const std::vector<double>& axis,
                     const std::vector<double>& values) {
  const double level = std::numbers::pi / 3.0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < level) continue;
    if (i == 0) return axis[0];
    const double v0 = values[i - 1];
    const double frac = values[i] > v0 ? (level - v0) / (values[i] - v0) : 1.0;
    return axis[i - 1] + frac * (axis[i] - axis[i - 1]);
  }
  return -1.0;
}

int run_robustness(const RobustnessOpts& o) {
  if (o.grid < 2) throw Error("grid must be at least 2");
  SuccessRegionSpec spec;
  spec.cells_per_axis = o.grid;
  spec.max_eps = o.max_eps;
  const RobustnessGrid grid = success_region(spec);

  {
    std::ofstream os(o.out);
    if (!os) throw Error("cannot write " + o.out);
    write_grid_csv(grid, os);
  }
  const std::string contour_path = contour_path_for(o.out);
  {
    std::ofstream os(contour_path);
    if (!os) throw Error("cannot write " + contour_path);
    write_contour_csv(grid, os);
  }

  const std::string manifest_path =
      o.manifest.empty() ? o.out + ".manifest.json" : o.manifest;
  RunManifest m;
  m.command = "robustness";
  m.parameters = {{"grid", o.grid},
                  {"max_eps", o.max_eps},
                  {"out", o.out},
                  {"contour", contour_path},
                  {"manifest", manifest_path}};
  write_manifest(m, manifest_path);

  const int n = o.grid;
  std::vector<double> leak_col(n), coh_col(n);
  for (int i = 0; i < n; ++i) {
    leak_col[i] = grid.values[static_cast<size_t>(0) * n + i];
    coh_col[i] = grid.values[static_cast<size_t>(i) * n + 0];
  }
  const double leak_x = axis_crossing(grid.axis_eps_l, leak_col);
  const double coh_x = axis_crossing(grid.axis_eps_c, coh_col);
  if (leak_x >= 0) {
    std::cout << "leak_axis_crossing_prob " << fmt(leak_x * leak_x) << "\n";
  } else {
    std::cout << "leak_axis_crossing_prob none\n";
  }
  if (coh_x >= 0) {
    std::cout << "coherent_axis_crossing_prob " << fmt(coh_x * coh_x) << "\n";
  } else {
    std::cout << "coherent_axis_crossing_prob none\n";
  }
  std::cout << "monotonicity_violations " << grid.monotonicity_violations
            << "\n";
  if (grid.any_dense_fallback) {
    std::cout << "dense_fallback used\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// prep
// ---------------------------------------------------------------------------

struct PrepOpts {
  std::string hamiltonian;
  int pair_a = 0;
  int pair_b = 1;
  double beta = 0.0;
  std::string out;  // empty = stdout
  std::string manifest = "prep_manifest.json";
};

int run_prep(const PrepOpts& o) {
  const PauliHamiltonian h = parse_hamiltonian_file(o.hamiltonian);
  const Spectrum spec = spectrum(h);
  const int n = h.n_qubits;
  const Gate a_gate = build_A(spec);
  Circuit circuit = build_B(o.pair_a, o.pair_b, o.beta, n);
  circuit.gates.push_back(a_gate);

  const std::int64_t dim = std::int64_t{1} << n;
  CVector e0 = CVector::Zero(dim);
  e0[0] = 1.0;
  const CVector got = simulate(circuit, e0);
  const CVector want =
      (a_gate.matrix.col(o.pair_a) +
       std::exp(Complex(0.0, o.beta)) * a_gate.matrix.col(o.pair_b)) /
      std::sqrt(2.0);
  if ((got - want).norm() > 1e-9) {
    std::cerr << "error: preparation self-check failed (deviation "
              << fmt((got - want).norm()) << ")\n";
    return kExitSelfCheck;
  }

  const std::string text = circuit_to_text(circuit);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(o.out);
    if (!os) throw Error("cannot write " + o.out);
    os << text;
  }

  RunManifest m;
  m.command = "prep";
  m.inputs["hamiltonian"] = o.hamiltonian;
  m.parameters = {{"pair_a", o.pair_a},
                  {"pair_b", o.pair_b},
                  {"beta", o.beta},
                  {"out", o.out},
                  {"manifest", o.manifest}};
  write_manifest(m, o.manifest);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cost
// ---------------------------------------------------------------------------

struct CostOpts {
  std::int64_t singles = 0;
  std::int64_t cnots = 0;
  std::string manifest = "cost_manifest.json";
};

int run_cost(const CostOpts& o) {
  if (o.singles < 0 || o.cnots < 0) {
    throw Error("gate counts must be nonnegative");
  }
  std::cout << "uncontrolled " << o.cnots << "\n";
  std::cout << "controlled " << controlled_cost(o.singles, o.cnots) << "\n";

  RunManifest m;
  m.command = "cost";
  m.parameters = {{"singles", o.singles},
                  {"cnots", o.cnots},
                  {"manifest", o.manifest}};
  write_manifest(m, o.manifest);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

int run_replay(const std::string& manifest_path, const std::string& out) {
  const RunManifest m = read_manifest(manifest_path);
  const nlohmann::json& p = m.parameters;
  if (m.command == "spectrum") {
    SpectrumOpts o;
    o.hamiltonian = m.inputs.at("hamiltonian");
    o.manifest = out.empty() ? p.at("manifest").get<std::string>()
                             : out + ".manifest.json";
    return run_spectrum(o);
  }
  if (m.command == "rpe") {
    RpeOpts o;
    o.hamiltonian = m.inputs.at("hamiltonian");
    o.pair_a = p.at("pair_a").get<int>();
    o.pair_b = p.at("pair_b").get<int>();
    o.generations = p.at("generations").get<int>();
    o.exact = p.at("mode").get<std::string>() == "exact";
    o.shots = p.at("shots").get<std::int64_t>();
    o.seed = m.seed;
    o.tau = p.at("tau").get<std::string>();
    o.out = out.empty() ? p.at("out").get<std::string>() : out;
    return run_rpe_cmd(o);
  }
  if (m.command == "scaling") {
    ScalingOpts o;
    o.hamiltonian = m.inputs.at("hamiltonian");
    o.pair_a = p.at("pair_a").get<int>();
    o.pair_b = p.at("pair_b").get<int>();
    o.trials = p.at("trials").get<int>();
    o.generations = p.at("generations").get<int>();
    o.exact = p.at("mode").get<std::string>() == "exact";
    o.shots = p.at("shots").get<std::int64_t>();
    o.seed = m.seed;
    o.tau = p.at("tau").get<std::string>();
    o.out = out.empty() ? p.at("out").get<std::string>() : out;
    return run_scaling(o);
  }
  if (m.command == "robustness") {
    RobustnessOpts o;
    o.grid = p.at("grid").get<int>();
    o.max_eps = p.at("max_eps").get<double>();
    o.out = out.empty() ? p.at("out").get<std::string>() : out;
    return run_robustness(o);
  }
  if (m.command == "prep") {
    PrepOpts o;
    o.hamiltonian = m.inputs.at("hamiltonian");
    o.pair_a = p.at("pair_a").get<int>();
    o.pair_b = p.at("pair_b").get<int>();
    o.beta = p.at("beta").get<double>();
    o.out = out.empty() ? p.at("out").get<std::string>() : out;
    o.manifest = o.out.empty() ? p.at("manifest").get<std::string>()
                               : o.out + ".manifest.json";
    return run_prep(o);
  }
  if (m.command == "cost") {
    CostOpts o;
    o.singles = p.at("singles").get<std::int64_t>();
    o.cnots = p.at("cnots").get<std::int64_t>();
    o.manifest = out.empty() ? p.at("manifest").get<std::string>()
                             : out + ".manifest.json";
    return run_cost(o);
  }
  throw Error("unknown command in manifest: " + m.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for auxiliary-free robust phase "
               "estimation of eigenvalue differences"};
  app.require_subcommand(1);

  SpectrumOpts spectrum_opts;
  auto* cmd_spectrum = app.add_subcommand(
      "spectrum", "Diagonalize a Pauli Hamiltonian and print its spectrum");
  cmd_spectrum->add_option("hamiltonian", spectrum_opts.hamiltonian)
      ->required();
  cmd_spectrum->add_option("--manifest", spectrum_opts.manifest);

  RpeOpts rpe_opts;
  bool rpe_exact_flag = false;
  bool rpe_shots_given = false;
  auto* cmd_rpe = app.add_subcommand(
      "rpe", "Estimate one eigenvalue difference by robust phase estimation");
  cmd_rpe->add_option("hamiltonian", rpe_opts.hamiltonian)->required();
  std::vector<int> rpe_pair;
  cmd_rpe->add_option("--pair", rpe_pair, "eigenstate indices a b")
      ->expected(2)
      ->required();
  cmd_rpe->add_option("--generations", rpe_opts.generations);
  auto* rpe_shots_opt = cmd_rpe->add_option("--shots", rpe_opts.shots);
  cmd_rpe->add_flag("--exact", rpe_exact_flag);
  cmd_rpe->add_option("--seed", rpe_opts.seed);
  cmd_rpe->add_option("--tau", rpe_opts.tau, "'auto' or a positive real");
  cmd_rpe->add_option("--out", rpe_opts.out);
  cmd_rpe->add_option("--manifest", rpe_opts.manifest);

  ScalingOpts scaling_opts;
  bool scaling_exact_flag = false;
  auto* cmd_scaling = app.add_subcommand(
      "scaling", "Per-generation error distribution over repeated trials");
  cmd_scaling->add_option("hamiltonian", scaling_opts.hamiltonian)
      ->required();
  std::vector<int> scaling_pair;
  cmd_scaling->add_option("--pair", scaling_pair)->expected(2);
  cmd_scaling->add_option("--trials", scaling_opts.trials);
  cmd_scaling->add_option("--shots", scaling_opts.shots);
  cmd_scaling->add_flag("--exact", scaling_exact_flag);
  cmd_scaling->add_option("--generations", scaling_opts.generations);
  cmd_scaling->add_option("--seed", scaling_opts.seed);
  cmd_scaling->add_option("--tau", scaling_opts.tau);
  cmd_scaling->add_option("--out", scaling_opts.out);
  cmd_scaling->add_option("--manifest", scaling_opts.manifest);

  RobustnessOpts robustness_opts;
  auto* cmd_robustness = app.add_subcommand(
      "robustness", "Worst-case extraction-error map over tied amplitudes");
  cmd_robustness->add_option("--grid", robustness_opts.grid);
  cmd_robustness->add_option("--max-eps", robustness_opts.max_eps);
  cmd_robustness->add_option("--out", robustness_opts.out);
  cmd_robustness->add_option("--manifest", robustness_opts.manifest);

  PrepOpts prep_opts;
  auto* cmd_prep = app.add_subcommand(
      "prep", "Synthesize and self-check the two-eigenstate preparation");
  cmd_prep->add_option("hamiltonian", prep_opts.hamiltonian)->required();
  std::vector<int> prep_pair;
  cmd_prep->add_option("--pair", prep_pair)->expected(2)->required();
  cmd_prep->add_option("--beta", prep_opts.beta);
  cmd_prep->add_option("--out", prep_opts.out);
  cmd_prep->add_option("--manifest", prep_opts.manifest);

  CostOpts cost_opts;
  auto* cmd_cost = app.add_subcommand(
      "cost", "Uncontrolled vs controlled-evolution CNOT cost");
  cmd_cost->add_option("--singles", cost_opts.singles);
  cmd_cost->add_option("--cnots", cost_opts.cnots);
  cmd_cost->add_option("--manifest", cost_opts.manifest);

  std::string replay_manifest;
  std::string replay_out;
  auto* cmd_replay =
      app.add_subcommand("replay", "Re-run a recorded manifest");
  cmd_replay->add_option("manifest", replay_manifest)->required();
  cmd_replay->add_option("--out", replay_out,
                         "override the recorded output path/prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (cmd_spectrum->parsed()) return run_spectrum(spectrum_opts);
    if (cmd_rpe->parsed()) {
      rpe_opts.pair_a = rpe_pair[0];
      rpe_opts.pair_b = rpe_pair[1];
      rpe_shots_given = rpe_shots_opt->count() > 0;
      rpe_opts.exact = rpe_exact_flag || !rpe_shots_given;
      return run_rpe_cmd(rpe_opts);
    }
    if (cmd_scaling->parsed()) {
      if (scaling_pair.size() == 2) {
        scaling_opts.pair_a = scaling_pair[0];
        scaling_opts.pair_b = scaling_pair[1];
      }
      scaling_opts.exact = scaling_exact_flag;
      return run_scaling(scaling_opts);
    }
    if (cmd_robustness->parsed()) return run_robustness(robustness_opts);
    if (cmd_prep->parsed()) {
      prep_opts.pair_a = prep_pair[0];
      prep_opts.pair_b = prep_pair[1];
      return run_prep(prep_opts);
    }
    if (cmd_cost->parsed()) return run_cost(cost_opts);
    if (cmd_replay->parsed()) return run_replay(replay_manifest, replay_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
