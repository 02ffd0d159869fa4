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

#include "rpelab/rpe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rpelab/tolerances.hpp"

namespace rpelab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

double circle_distance(double x, double y) { return wrap_angle(x - y); }

std::pair<double, double> ideal_probabilities(double theta, std::int64_t k) {
  if (k < 1) {
    throw Error("ideal_probabilities: k must be positive");
  }
  const double arg = static_cast<double>(k) * theta;
  const double pc = 0.5 * (1.0 + std::cos(arg));
  const double ps = 0.5 * (1.0 + std::sin(arg));
  return {std::min(1.0, std::max(0.0, pc)), std::min(1.0, std::max(0.0, ps))};
}

ExtractedPhase phase_from_probabilities(double p_cos, double p_sin) {
  const double x = 2.0 * p_cos - 1.0;
  const double y = 2.0 * p_sin - 1.0;
  if (std::abs(x) < tol().phase_degenerate &&
      std::abs(y) < tol().phase_degenerate) {
    return {0.0, true};
  }
  double lambda = std::atan2(y, x);
  if (lambda < 0.0) lambda += kTwoPi;
  if (lambda >= kTwoPi) lambda = 0.0;
  return {lambda, false};
}

double select_branch(double lambda, std::int64_t k, double theta_prev) {
  double best = lambda / static_cast<double>(k);
  double best_dist = std::abs(circle_distance(best, theta_prev));
  for (std::int64_t m = 1; m < k; ++m) {
    const double cand =
        (lambda + kTwoPi * static_cast<double>(m)) / static_cast<double>(k);
    const double dist = std::abs(circle_distance(cand, theta_prev));
    if (dist < best_dist) {
      best = cand;
      best_dist = dist;
    }
  }
  return best;
}

RpeResult run_rpe_core(
    int generations,
    const std::function<std::pair<double, double>(std::int64_t)>& probs) {
  if (generations < 1) {
    throw Error("run_rpe: need at least one generation");
  }
  RpeResult result;
  result.generations.reserve(generations);
  double theta_prev = 0.0;
  for (int g = 0; g < generations; ++g) {
    const std::int64_t k = std::int64_t{1} << g;
    const auto [pc, ps] = probs(k);
    const ExtractedPhase ep = phase_from_probabilities(pc, ps);
    const double theta = select_branch(ep.lambda, k, theta_prev);
    result.generations.push_back(
        {g, k, pc, ps, ep.lambda, theta, ep.degenerate});
    result.any_degenerate = result.any_degenerate || ep.degenerate;
    theta_prev = theta;
  }
  result.theta_final = theta_prev;
  result.energy_difference = theta_prev;
  return result;
}

RpeResult run_rpe(const PauliHamiltonian& h, const RpeConfig& config) {
  const int n = h.n_qubits;
  const std::int64_t dim = std::int64_t{1} << n;
  if (config.index_a == config.index_b) {
    throw EqualIndices("run_rpe: pair indices must differ");
  }
  if (config.index_a < 0 || config.index_a >= dim || config.index_b < 0 ||
      config.index_b >= dim) {
    throw IndexOutOfRange("run_rpe: pair index outside the spectrum");
  }
  if (!(config.tau > 0.0)) {
    throw Error("run_rpe: tau must be positive");
  }
  if (config.mode == RpeMode::Sampled && config.shots < 1) {
    throw Error("run_rpe: shots must be positive");
  }

  const Spectrum spec = spectrum(h);
  const Gate a_gate = build_A(spec);

  Circuit prep_cos = build_B(config.index_a, config.index_b, 0.0, n);
  prep_cos.gates.push_back(a_gate);
  Circuit prep_sin =
      build_B(config.index_a, config.index_b, std::numbers::pi / 2.0, n);
  prep_sin.gates.push_back(a_gate);
  const Circuit unprep = inverse(prep_cos);

  CVector e0 = CVector::Zero(dim);
  e0[0] = 1.0;
  const CVector psi_cos = simulate(prep_cos, e0);
  const CVector psi_sin = simulate(prep_sin, e0);

  CMatrix walk = unitary_exp(spec, config.tau);
  std::mt19937_64 rng(config.seed);

  auto survival = [&](const CMatrix& wk, const CVector& psi) {
    const CVector back = simulate(unprep, apply(wk, psi));
    const double p = std::norm(back[0]);
    return std::min(1.0, std::max(0.0, p));
  };
  auto estimate = [&](double p) {
    if (config.mode == RpeMode::Exact) return p;
    std::binomial_distribution<std::int64_t> d(config.shots, p);
    return static_cast<double>(d(rng)) / static_cast<double>(config.shots);
  };

  std::int64_t k_held = 1;
  auto probs = [&](std::int64_t k) {
    while (k_held < k) {
      walk = walk * walk;
      k_held *= 2;
    }
    const double pc = estimate(survival(walk, psi_cos));
    const double ps = estimate(survival(walk, psi_sin));
    return std::make_pair(pc, ps);
  };

  RpeResult result = run_rpe_core(config.generations, probs);
  result.index_a = config.index_a;
  result.index_b = config.index_b;
  result.energy_difference = result.theta_final / config.tau;
  return result;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

std::vector<double> reconstruct_energies(
    int n_energies, const std::vector<DifferenceMeasurement>& diffs,
    double trace, double tau, WrapPolicy policy) {
  if (n_energies < 1) {
    throw Error("reconstruct_energies: need at least one energy");
  }
  if (!(tau > 0.0)) {
    throw Error("reconstruct_energies: tau must be positive");
  }
  UnionFind uf(n_energies);
  for (const auto& d : diffs) {
    if (d.index_a < 0 || d.index_a >= n_energies || d.index_b < 0 ||
        d.index_b >= n_energies) {
      throw IndexOutOfRange("reconstruct_energies: pair index out of range");
    }
    if (d.index_a == d.index_b) {
      throw EqualIndices("reconstruct_energies: pair indices must differ");
    }
    uf.unite(d.index_a, d.index_b);
  }
  const int root = uf.find(0);
  for (int i = 1; i < n_energies; ++i) {
    if (uf.find(i) != root) {
      throw DisconnectedPairGraph(
          "reconstruct_energies: difference graph does not connect all "
          "indices");
    }
  }

  const int rows = static_cast<int>(diffs.size()) + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, n_energies);
  Eigen::VectorXd b(rows);
  for (int i = 0; i < static_cast<int>(diffs.size()); ++i) {
    const auto& d = diffs[i];
    a(i, d.index_a) = -1.0;
    a(i, d.index_b) = 1.0;
    const double theta =
        policy == WrapPolicy::Principal ? wrap_angle(diffs[i].theta)
                                        : diffs[i].theta;
    b[i] = theta / tau;
    (void)d;
  }
  a.row(rows - 1).setOnes();
  b[rows - 1] = trace;

  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  const double residual = (a * x - b).lpNorm<Eigen::Infinity>();
  if (residual > tol().reconstruction_residual) {
    throw InconsistentDifferences(
        "reconstruct_energies: least squares residual " +
        std::to_string(residual) + " exceeds tolerance");
  }
  return std::vector<double>(x.data(), x.data() + n_energies);
}

double auto_tau(const Spectrum& spec) {
  const double spread =
      spec.eigenvalues[spec.dim() - 1] - spec.eigenvalues[0];
  if (!(spread > 0.0)) return 1.0;
  return kTwoPi * 0.9 / spread;
}

}  // namespace rpelab
