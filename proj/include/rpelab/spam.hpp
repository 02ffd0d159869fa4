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

#ifndef RPELAB_SPAM_HPP
#define RPELAB_SPAM_HPP

#include <complex>

#include "rpelab/errors.hpp"
#include "rpelab/numerics.hpp"
#include "rpelab/tolerances.hpp"

namespace rpelab {

// Coherent state-preparation-and-measurement error model. The preparation
// routine leaves amplitude eps_c (with phase eps_p) on the orthogonal
// in-subspace state and amplitude eps_l on a leaked state outside the
// target subspace; primed fields describe the independent un-preparation.
struct SpamParams {
  double eps_c = 0.0;
  double eps_p = 0.0;
  double eps_l = 0.0;
  double eps_c_prime = 0.0;
  double eps_p_prime = 0.0;
  double eps_l_prime = 0.0;
};

// Overlap between the (evolved) preparation leak state and the
// un-preparation leak state: <leak'|leak> = u * exp(i * phase_u).
struct LeakageOverlap {
  double u = 0.0;
  double phase_u = 0.0;
};

// Throws AmplitudeBudgetExceeded when eps_c^2 + eps_l^2 > 1 (either side)
// or any amplitude is outside [0, 1].
void validate_spam_params(const SpamParams& params);

// sqrt(1 - eps_c^2 - eps_l^2), clamped at zero for exact budgets.
double coherent_amplitude(double eps_c, double eps_l);

// (C/sqrt2)(|E_a> + e^{i beta}|E_b>) + (eps_c e^{i eps_p}/sqrt2)
// (|E_a> - e^{i beta}|E_b>) + eps_l |leak>. The leak vector must be unit
// norm and orthogonal to both target eigenvectors; it may be empty when
// eps_l == 0.
CVector erroneous_prep_state(const Spectrum& spec, int a, int b, double beta,
                             double eps_c, double eps_p, double eps_l,
                             const CVector& leak_vector);

// Closed-form survival probability of the erroneous prepare-evolve-unprepare
// sequence at accumulated phase lambda.
double exact_erroneous_probability(double lambda, const SpamParams& params,
                                   const LeakageOverlap& overlap);

// Additive error on the cosine-circuit signal: 2 * (P~ - (1+cos lambda)/2).
double exact_delta_c(double lambda, const SpamParams& params,
                     const LeakageOverlap& overlap);

// Sine-circuit counterpart; equals exact_delta_c at lambda - pi/2.
double exact_delta_s(double lambda, const SpamParams& params,
                     const LeakageOverlap& overlap);

// A pair of unit leak vectors orthogonal to |E_a>, |E_b> realizing a
// requested overlap <leak'|leak> = u e^{i phase_u}. Uses the two lowest
// spectator eigenvectors; dimension must be at least 4 when u < 1
// (at least 3 when u == 1).
struct LeakPair {
  CVector leak;
  CVector leak_prime;
};

LeakPair make_leak_pair(const Spectrum& spec, int a, int b,
                        const LeakageOverlap& overlap);

}  // namespace rpelab

#endif
