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

#include "rpelab/spam.hpp"

#include <cmath>
#include <numbers>

namespace rpelab {

namespace {

void check_budget(double eps_c, double eps_l, const char* side) {
  if (eps_c < 0.0 || eps_c > 1.0 || eps_l < 0.0 || eps_l > 1.0) {
    throw AmplitudeBudgetExceeded(std::string("spam: ") + side +
                                  " amplitude outside [0, 1]");
  }
  if (eps_c * eps_c + eps_l * eps_l > 1.0 + 1e-12) {
    throw AmplitudeBudgetExceeded(std::string("spam: ") + side +
                                  " amplitudes exceed the unit budget");
  }
}

}  // namespace

void validate_spam_params(const SpamParams& params) {
  check_budget(params.eps_c, params.eps_l, "preparation");
  check_budget(params.eps_c_prime, params.eps_l_prime, "un-preparation");
}

double coherent_amplitude(double eps_c, double eps_l) {
  const double s = 1.0 - eps_c * eps_c - eps_l * eps_l;
  return std::sqrt(std::max(0.0, s));
}

CVector erroneous_prep_state(const Spectrum& spec, int a, int b, double beta,
                             double eps_c, double eps_p, double eps_l,
                             const CVector& leak_vector) {
  const int dim = spec.dim();
  if (a == b) throw EqualIndices("erroneous_prep_state: a and b must differ");
  if (a < 0 || a >= dim || b < 0 || b >= dim) {
    throw IndexOutOfRange("erroneous_prep_state: eigenstate index");
  }
  check_budget(eps_c, eps_l, "preparation");

  const CVector ea = spec.eigenvectors.col(a);
  const CVector eb = spec.eigenvectors.col(b);
  const Complex phase = std::exp(Complex(0.0, beta));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  CVector state =
      (coherent_amplitude(eps_c, eps_l) * inv_sqrt2) * (ea + phase * eb) +
      (eps_c * std::exp(Complex(0.0, eps_p)) * inv_sqrt2) * (ea - phase * eb);
  if (eps_l != 0.0 || leak_vector.size() != 0) {
    if (leak_vector.size() != dim) {
      throw DimensionMismatch("erroneous_prep_state: leak vector dimension");
    }
    if (std::abs(leak_vector.norm() - 1.0) > tol().leak_orthogonality) {
      throw Error("erroneous_prep_state: leak vector must be unit norm");
    }
    if (std::abs(ea.dot(leak_vector)) > tol().leak_orthogonality ||
        std::abs(eb.dot(leak_vector)) > tol().leak_orthogonality) {
      throw LeakNotOrthogonal(
          "erroneous_prep_state: leak vector overlaps the target subspace");
    }
    state += eps_l * leak_vector;
  }
  return state;
}

double exact_erroneous_probability(double lambda, const SpamParams& params,
                                   const LeakageOverlap& overlap) {
  validate_spam_params(params);
  if (overlap.u < 0.0 || overlap.u > 1.0) {
    throw Error("spam: leakage overlap magnitude outside [0, 1]");
  }
  const double c = coherent_amplitude(params.eps_c, params.eps_l);
  const double cp = coherent_amplitude(params.eps_c_prime, params.eps_l_prime);
  const Complex i(0.0, 1.0);
  const Complex a =
      cp * c + params.eps_c_prime * params.eps_c *
                   std::exp(i * (params.eps_p - params.eps_p_prime));
  const Complex b = c * params.eps_c_prime * std::exp(-i * params.eps_p_prime) +
                    cp * params.eps_c * std::exp(i * params.eps_p);
  const Complex w = std::exp(-i * lambda);
  const Complex in_subspace = 0.5 * a * (1.0 + w) + 0.5 * b * (1.0 - w);
  const Complex leak = params.eps_l * params.eps_l_prime * overlap.u *
                       std::exp(i * overlap.phase_u);
  const double p = std::norm(in_subspace + leak);
  return std::min(1.0, std::max(0.0, p));
}

double exact_delta_c(double lambda, const SpamParams& params,
                     const LeakageOverlap& overlap) {
  const double ideal = 0.5 * (1.0 + std::cos(lambda));
  return 2.0 * (exact_erroneous_probability(lambda, params, overlap) - ideal);
}

double exact_delta_s(double lambda, const SpamParams& params,
                     const LeakageOverlap& overlap) {
  return exact_delta_c(lambda - std::numbers::pi / 2.0, params, overlap);
}

LeakPair make_leak_pair(const Spectrum& spec, int a, int b,
                        const LeakageOverlap& overlap) {
  const int dim = spec.dim();
  if (a == b) throw EqualIndices("make_leak_pair: a and b must differ");
  if (a < 0 || a >= dim || b < 0 || b >= dim) {
    throw IndexOutOfRange("make_leak_pair: eigenstate index");
  }
  if (overlap.u < 0.0 || overlap.u > 1.0) {
    throw Error("make_leak_pair: overlap magnitude outside [0, 1]");
  }
  int f1 = -1, f2 = -1;
  for (int idx = 0; idx < dim; ++idx) {
    if (idx == a || idx == b) continue;
    if (f1 < 0) {
      f1 = idx;
    } else {
      f2 = idx;
      break;
    }
  }
  const bool need_second = overlap.u < 1.0;
  if (f1 < 0 || (need_second && f2 < 0)) {
    throw DimensionMismatch(
        "make_leak_pair: not enough spectator eigenvectors for the requested "
        "overlap");
  }
  LeakPair pair;
  pair.leak = spec.eigenvectors.col(f1);
  pair.leak_prime = overlap.u *
                    std::exp(Complex(0.0, -overlap.phase_u)) *
                    spec.eigenvectors.col(f1);
  if (need_second) {
    pair.leak_prime +=
        std::sqrt(1.0 - overlap.u * overlap.u) * spec.eigenvectors.col(f2);
  }
  return pair;
}

}  // namespace rpelab
