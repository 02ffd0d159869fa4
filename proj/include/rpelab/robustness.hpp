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

#ifndef RPELAB_ROBUSTNESS_HPP
#define RPELAB_ROBUSTNESS_HPP

#include <array>
#include <ostream>
#include <utility>
#include <vector>

#include "rpelab/errors.hpp"
#include "rpelab/spam.hpp"

namespace rpelab {

// Scalar summary of the additive-error bound at the extremal preparation
// and un-preparation phases. a_mag/b_mag are the extremized coherent
// overlap magnitudes; l0/lx/ly the constant and harmonic coefficients of
// the bound; l_plus/l_minus its leak-widened constant extremes.
struct BoundTerms {
  double a_mag = 0.0;
  double b_mag = 0.0;
  double c = 0.0;
  double c_prime = 0.0;
  double l0 = 0.0;
  double lx = 0.0;
  double ly = 0.0;
  double f_max = 0.0;
  double l_plus = 0.0;
  double l_minus = 0.0;
};

// Full per-term ranges behind the envelope: each coefficient extremized
// independently over the preparation phases, plus the leak widenings.
struct EnvelopeBox {
  double l0_lo = 0.0;
  double l0_hi = 0.0;
  double lx_lo = 0.0;
  double lx_hi = 0.0;
  double ly_mag = 0.0;
  double leak_up = 0.0;
  double leak_dn = 0.0;
  double d = 0.0;  // eps_l * eps_l'
  double f_max = 0.0;
  double a_min = 0.0;
  double a_max = 0.0;
  double b_min = 0.0;
  double b_max = 0.0;
};

double f_max(double eps_c, double eps_l, double eps_c_prime,
             double eps_l_prime);

EnvelopeBox compute_envelope_box(double eps_c, double eps_l,
                                 double eps_c_prime, double eps_l_prime);

BoundTerms compute_bound_terms(double eps_c, double eps_l,
                               double eps_c_prime, double eps_l_prime);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Phase-free range of the cosine-circuit additive error at a given lambda.
Interval delta_c_envelope(double lambda, double eps_c, double eps_l,
                          double eps_c_prime, double eps_l_prime);

// Sine-circuit counterpart: the cosine envelope at lambda - pi/2.
Interval delta_s_envelope(double lambda, double eps_c, double eps_l,
                          double eps_c_prime, double eps_l_prime);

struct WorstCase {
  double value = 0.0;          // max |delta_lambda|, clamped at pi/2
  bool dense_fallback = false; // analytic root finding failed somewhere
};

// Worst-case phase-extraction error over all preparation phases, leakage
// overlaps, and lambda, for fixed error amplitudes.
WorstCase worst_case_delta_lambda(double eps_c, double eps_l,
                                  double eps_c_prime, double eps_l_prime);

// Certifying oracle: grids every free phase, the leakage overlap, and
// lambda; evaluates the exact model and returns the largest observed
// extraction error (clamped at pi/2). resolution >= 16 points per axis.
double brute_force_delta_lambda(double eps_c, double eps_l,
                                double eps_c_prime, double eps_l_prime,
                                int resolution);

struct SuccessRegionSpec {
  int cells_per_axis = 201;
  double max_eps = 0.5;
};

struct RobustnessGrid {
  std::vector<double> axis_eps_c;
  std::vector<double> axis_eps_l;
  // Row-major: values[ic * axis_eps_l.size() + il].
  std::vector<double> values;
  // Interpolated pi/3 level-set polyline, one (eps_c, eps_l) point per
  // column that crosses.
  std::vector<std::pair<double, double>> contour;
  int monotonicity_violations = 0;
  bool any_dense_fallback = false;
};

// Map of worst_case_delta_lambda over the plane with the primed amplitudes
// tied to the unprimed ones.
RobustnessGrid success_region(const SuccessRegionSpec& spec);

void write_grid_csv(const RobustnessGrid& grid, std::ostream& os);
void write_contour_csv(const RobustnessGrid& grid, std::ostream& os);

// Per-vertex machinery, exposed so tests can certify the closed forms
// against dense scans.
namespace boxvertex {

enum class Kind { Same, Opposite };

struct Vertex {
  double la = 0.0;
  double lb = 0.0;
  Kind kind = Kind::Same;
  double sgn = 1.0;
};

std::array<Vertex, 4> vertices(double l_plus, double l_minus);

// (Delta_1, Delta_2) of the vertex profile at lambda.
std::pair<double, double> vertex_profile(const Vertex& v, double lx,
                                         double ly, double lambda);

// |atan2(d2, d1)| for d1 > 0, else pi/2; capped at pi/2.
double vertex_angle(double d1, double d2);

std::vector<double> same_sign_candidates(const Vertex& v, double lx,
                                         double ly);

// May throw RootFindingFailure if the companion-matrix eigensolve fails.
std::vector<double> opposite_sign_candidates(const Vertex& v, double lx,
                                             double ly);

// Max vertex angle over the candidate lambdas of one profile.
double profile_max_analytic(const Vertex& v, double lx, double ly);

// Dense-lambda scan of one profile (certification / fallback path).
double profile_max_dense(const Vertex& v, double lx, double ly,
                         int n_lambda);

}  // namespace boxvertex

}  // namespace rpelab

#endif
