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

#ifndef RPELAB_RPE_HPP
#define RPELAB_RPE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rpelab/circuit.hpp"
#include "rpelab/errors.hpp"
#include "rpelab/hamiltonian.hpp"
#include "rpelab/numerics.hpp"

namespace rpelab {

// How measurement probabilities are obtained for each circuit.
enum class RpeMode {
  Exact,    // exact survival probability from the statevector
  Sampled,  // one binomial batch of `shots` per circuit per generation
};

struct RpeConfig {
  int index_a = 0;     // lower eigenstate index of the target pair
  int index_b = 1;     // upper eigenstate index of the target pair
  int generations = 6; // number of doubling rounds G; k_g = 2^g
  RpeMode mode = RpeMode::Exact;
  std::int64_t shots = 1024;  // per circuit, sampled mode only
  std::uint64_t seed = 0;     // sampled mode only
  double tau = 1.0;           // evolution time per application of W
};

struct GenerationRecord {
  int g = 0;
  std::int64_t k = 1;
  double p_cos = 0.0;
  double p_sin = 0.0;
  double lambda = 0.0;  // extracted phase in [0, 2*pi)
  double theta = 0.0;   // accumulated estimate after branch selection
  bool degenerate = false;
};

struct RpeResult {
  int index_a = 0;
  int index_b = 0;
  std::vector<GenerationRecord> generations;
  double theta_final = 0.0;       // estimate of tau * (E_b - E_a), mod 2*pi
  double energy_difference = 0.0; // theta_final / tau
  bool any_degenerate = false;
};

// Extracted phase with a flag raised when both probabilities sit on the
// center of the circle and the angle is meaningless.
struct ExtractedPhase {
  double lambda = 0.0;
  bool degenerate = false;
};

// Noise-free probabilities for k applications of W at accumulated phase
// theta: P_cos = (1 + cos(k*theta))/2, P_sin = (1 + sin(k*theta))/2.
std::pair<double, double> ideal_probabilities(double theta, std::int64_t k);

// lambda = atan2(2*p_sin - 1, 2*p_cos - 1), mapped to [0, 2*pi).
ExtractedPhase phase_from_probabilities(double p_cos, double p_sin);

// Picks theta = (lambda + 2*pi*m) / k over m = 0..k-1, minimizing the
// circle distance to theta_prev; ties resolve toward the smaller theta.
double select_branch(double lambda, std::int64_t k, double theta_prev);

// Shortest signed circle distance between two angles, in (-pi, pi].
double circle_distance(double x, double y);

// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

// Runs the accumulation loop over generations given a probability source.
// probs(k) must return {P_cos, P_sin} for k applications of W.
RpeResult run_rpe_core(
    int generations,
    const std::function<std::pair<double, double>(std::int64_t)>& probs);

// Full protocol against a Hamiltonian: prepares the two-eigenstate
// superpositions with basis-encoding and eigenbasis-rotation circuits,
// evolves, un-prepares, and measures the all-zeros return probability.
RpeResult run_rpe(const PauliHamiltonian& h, const RpeConfig& config);

// How reconstructed differences are wrapped before solving.
enum class WrapPolicy {
  Principal,  // wrap each difference to (-pi, pi] before dividing by tau
  Raw,        // use theta as given (caller resolved any wrapping)
};

struct DifferenceMeasurement {
  int index_a = 0;
  int index_b = 0;
  double theta = 0.0;  // estimate of tau * (E_b - E_a)
};

// Solves for N eigenvalues from pairwise difference measurements plus the
// trace, by least squares. Requires the pair graph to connect all indices.
std::vector<double> reconstruct_energies(int n_energies,
                                         const std::vector<DifferenceMeasurement>& diffs,
                                         double trace, double tau,
                                         WrapPolicy policy = WrapPolicy::Principal);

// Largest spread of the spectrum mapped to 90% of the phase circle:
// tau = 2*pi*0.9 / (E_max - E_min). Returns 1.0 for a flat spectrum.
double auto_tau(const Spectrum& spec);

}  // namespace rpelab

#endif
