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

#include "rpelab/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "rpelab/numerics.hpp"
#include "rpelab/parallel.hpp"
#include "rpelab/tolerances.hpp"

namespace rpelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kRoot3 = std::numbers::sqrt3;

// ---------------------------------------------------------------------------
// Small dense-coefficient polynomial helpers, highest power first.
// ---------------------------------------------------------------------------

using Poly = std::vector<double>;

Poly poly_add(const Poly& p, const Poly& q) {
  const size_t n = std::max(p.size(), q.size());
  Poly out(n, 0.0);
  for (size_t i = 0; i < p.size(); ++i) out[n - p.size() + i] += p[i];
  for (size_t i = 0; i < q.size(); ++i) out[n - q.size() + i] += q[i];
  return out;
}

Poly poly_scale(const Poly& p, double x) {
  Poly out = p;
  for (double& c : out) c *= x;
  return out;
}

Poly poly_sub(const Poly& p, const Poly& q) {
  return poly_add(p, poly_scale(q, -1.0));
}

Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.empty() || q.empty()) return {};
  Poly out(p.size() + q.size() - 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

Poly poly_der(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly out(p.size() - 1);
  const size_t deg = p.size() - 1;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = p[i] * static_cast<double>(deg - i);
  }
  return out;
}

double poly_val(const Poly& p, double x) {
  double v = 0.0;
  for (double c : p) v = v * x + c;
  return v;
}

Poly poly_trim(const Poly& p) {
  double top = 0.0;
  for (double c : p) top = std::max(top, std::abs(c));
  if (top == 0.0) return {};
  size_t first = 0;
  while (first < p.size() && std::abs(p[first]) <= 1e-14 * top) ++first;
  return Poly(p.begin() + first, p.end());
}

// Real-coefficient roots via the companion matrix.
std::vector<std::complex<double>> poly_roots(const Poly& p) {
  const Poly q = poly_trim(p);
  if (q.size() <= 1) return {};
  const int n = static_cast<int>(q.size()) - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(0, i) = -q[i + 1] / q[0];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw RootFindingFailure("polynomial companion eigensolve failed");
  }
  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

// Trigonometric polynomial a(c) + b(c) * s with s^2 reduced to 1 - c^2.
struct TrigPoly {
  Poly a{0.0};
  Poly b{0.0};

  static TrigPoly constant(double x) { return {{x}, {0.0}}; }
  static TrigPoly cosine() { return {{1.0, 0.0}, {0.0}}; }
  static TrigPoly sine() { return {{0.0}, {1.0}}; }

  TrigPoly operator+(const TrigPoly& o) const {
    return {poly_add(a, o.a), poly_add(b, o.b)};
  }
  TrigPoly operator-(const TrigPoly& o) const {
    return {poly_sub(a, o.a), poly_sub(b, o.b)};
  }
  TrigPoly operator*(const TrigPoly& o) const {
    const Poly one_m_c2 = {-1.0, 0.0, 1.0};
    Poly na = poly_add(poly_mul(a, o.a),
                       poly_mul(poly_mul(b, o.b), one_m_c2));
    Poly nb = poly_add(poly_mul(a, o.b), poly_mul(b, o.a));
    return {std::move(na), std::move(nb)};
  }
  TrigPoly scaled(double x) const { return {poly_scale(a, x), poly_scale(b, x)}; }

  // d/dlambda with dc = -s, ds = c.
  TrigPoly ddlam() const {
    const Poly da = poly_der(a);
    const Poly db = poly_der(b);
    const Poly neg_one_m_c2 = {1.0, 0.0, -1.0};
    Poly na = poly_add(poly_mul(db, neg_one_m_c2), poly_mul(b, {1.0, 0.0}));
    Poly nb = poly_scale(da, -1.0);
    return {std::move(na), std::move(nb)};
  }
};

// Lambda values where the trig polynomial vanishes: eliminate s via
// a^2 - b^2 (1 - c^2) = 0, then validate each (c, s) branch.
std::vector<double> tp_roots(const TrigPoly& t) {
  const Poly one_m_c2 = {-1.0, 0.0, 1.0};
  const Poly q =
      poly_sub(poly_mul(t.a, t.a), poly_mul(poly_mul(t.b, t.b), one_m_c2));
  std::vector<double> out;
  for (const auto& r : poly_roots(q)) {
    if (std::abs(r.imag()) >= tol().root_imag) continue;
    if (std::abs(r.real()) > 1.0 + tol().root_clamp) continue;
    const double cc = std::clamp(r.real(), -1.0, 1.0);
    const double mag = std::sqrt(std::max(0.0, 1.0 - cc * cc));
    for (const double sign : {1.0, -1.0}) {
      const double ss = sign * mag;
      if (std::abs(poly_val(t.a, cc) + poly_val(t.b, cc) * ss) <
          tol().root_residual) {
        out.push_back(std::atan2(ss, cc));
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bound terms and envelopes
// ---------------------------------------------------------------------------

double f_max(double eps_c, double eps_l, double eps_c_prime,
             double eps_l_prime) {
  validate_spam_params(
      {eps_c, 0.0, eps_l, eps_c_prime, 0.0, eps_l_prime});
  const double c = coherent_amplitude(eps_c, eps_l);
  const double cp = coherent_amplitude(eps_c_prime, eps_l_prime);
  const double re = cp * c + eps_c_prime * eps_c;
  const double im = c * eps_c_prime + cp * eps_c;
  return 2.0 * std::hypot(re, im);
}

EnvelopeBox compute_envelope_box(double eps_c, double eps_l,
                                 double eps_c_prime, double eps_l_prime) {
  validate_spam_params(
      {eps_c, 0.0, eps_l, eps_c_prime, 0.0, eps_l_prime});
  const double c = coherent_amplitude(eps_c, eps_l);
  const double cp = coherent_amplitude(eps_c_prime, eps_l_prime);
  EnvelopeBox box;
  box.d = eps_l * eps_l_prime;
  box.a_min = std::abs(cp * c - eps_c_prime * eps_c);
  box.a_max = cp * c + eps_c_prime * eps_c;
  box.b_min = std::abs(c * eps_c_prime - cp * eps_c);
  box.b_max = c * eps_c_prime + cp * eps_c;
  box.f_max = 2.0 * std::hypot(box.a_max, box.b_max);
  box.l0_lo = box.a_min * box.a_min - 1.0 + box.b_min * box.b_min;
  box.l0_hi = box.a_max * box.a_max - 1.0 + box.b_max * box.b_max;
  box.lx_lo = box.a_min * box.a_min - 1.0 - box.b_max * box.b_max;
  box.lx_hi = box.a_max * box.a_max - 1.0 - box.b_min * box.b_min;
  box.ly_mag = 2.0 * (c * eps_c * std::abs(cp * cp - eps_c_prime * eps_c_prime) +
                      cp * eps_c_prime * std::abs(c * c - eps_c * eps_c));
  box.leak_up = 2.0 * box.d * (box.f_max + box.d);
  box.leak_dn = std::min(box.f_max * box.f_max / 2.0, box.leak_up);
  return box;
}

BoundTerms compute_bound_terms(double eps_c, double eps_l,
                               double eps_c_prime, double eps_l_prime) {
  const EnvelopeBox box =
      compute_envelope_box(eps_c, eps_l, eps_c_prime, eps_l_prime);
  BoundTerms t;
  t.a_mag = box.a_max;
  t.b_mag = box.b_max;
  t.c = coherent_amplitude(eps_c, eps_l);
  t.c_prime = coherent_amplitude(eps_c_prime, eps_l_prime);
  t.l0 = box.l0_hi;
  t.lx = box.a_max * box.a_max - 1.0 - box.b_max * box.b_max;
  t.ly = box.ly_mag;
  t.f_max = box.f_max;
  t.l_plus = box.l0_hi + box.leak_up;
  t.l_minus = box.l0_lo - box.leak_dn;
  return t;
}

Interval delta_c_envelope(double lambda, double eps_c, double eps_l,
                          double eps_c_prime, double eps_l_prime) {
  const EnvelopeBox box =
      compute_envelope_box(eps_c, eps_l, eps_c_prime, eps_l_prime);
  const double c = std::cos(lambda);
  const double abs_s = std::abs(std::sin(lambda));
  Interval out;
  out.hi = box.l0_hi + box.leak_up + std::max(box.lx_lo * c, box.lx_hi * c) +
           box.ly_mag * abs_s;
  out.lo = box.l0_lo - box.leak_dn + std::min(box.lx_lo * c, box.lx_hi * c) -
           box.ly_mag * abs_s;
  return out;
}

Interval delta_s_envelope(double lambda, double eps_c, double eps_l,
                          double eps_c_prime, double eps_l_prime) {
  return delta_c_envelope(lambda - kHalfPi, eps_c, eps_l, eps_c_prime,
                          eps_l_prime);
}

// ---------------------------------------------------------------------------
// Box-vertex machinery
// ---------------------------------------------------------------------------

namespace boxvertex {

std::array<Vertex, 4> vertices(double l_plus, double l_minus) {
  return {Vertex{l_plus, l_plus, Kind::Same, 1.0},
          Vertex{l_minus, l_minus, Kind::Same, -1.0},
          Vertex{l_plus, l_minus, Kind::Opposite, 1.0},
          Vertex{l_minus, l_plus, Kind::Opposite, -1.0}};
}

std::pair<double, double> vertex_profile(const Vertex& v, double lx,
                                         double ly, double lambda) {
  const double l0 = std::hypot(v.la, v.lb);
  const double phi0 = std::atan2(v.lb, v.la);
  const double c1 = 1.0 + l0 * std::cos(lambda - phi0);
  const double c2 = l0 * std::sin(lambda - phi0);
  if (v.kind == Kind::Same) {
    return {c1 + v.sgn * lx, c2 + v.sgn * ly};
  }
  const double c2l = std::cos(2.0 * lambda);
  const double s2l = std::sin(2.0 * lambda);
  return {c1 + v.sgn * (lx * c2l + ly * s2l),
          c2 + v.sgn * (lx * s2l - ly * c2l)};
}

double vertex_angle(double d1, double d2) {
  if (d1 <= 0.0) return kHalfPi;
  return std::min(std::abs(std::atan2(d2, d1)), kHalfPi);
}

std::vector<double> same_sign_candidates(const Vertex& v, double lx,
                                         double ly) {
  const double l0 = std::hypot(v.la, v.lb);
  const double phi0 = std::atan2(v.lb, v.la);
  std::vector<double> cands = {
      phi0 - kPi / 6.0,       phi0 + kPi / 6.0, phi0 + kPi - kPi / 6.0,
      phi0 + kPi + kPi / 6.0, phi0,             phi0 + kPi,
      0.0,                    kPi};
  const double a = 1.0 + v.sgn * lx;
  const double b = v.sgn * ly;
  const double r = std::hypot(a, b);
  if (r > 0.0 && l0 <= r) {
    const double ac = std::atan2(b, a);
    const double off = std::acos(std::clamp(-l0 / r, -1.0, 1.0));
    cands.push_back(phi0 + ac + off);
    cands.push_back(phi0 + ac - off);
  } else {
    cands.push_back(phi0 + kPi);
  }
  return cands;
}

std::vector<double> opposite_sign_candidates(const Vertex& v, double lx,
                                             double ly) {
  const double u0 = v.la;
  const double v0 = v.lb;
  const double slx = v.sgn * lx;
  const double sly = v.sgn * ly;
  std::vector<double> cands = {0.0, kPi};

  // Success-margin stationarity: p1(c) + p2(c) s = 0 for both outer signs.
  const Poly one_m_c2 = {-1.0, 0.0, 1.0};
  for (const double t : {1.0, -1.0}) {
    const Poly p1 = {t * 4.0 * slx - kRoot3 * 4.0 * sly,
                     t * u0 - kRoot3 * v0,
                     -(t * 2.0 * slx - kRoot3 * 2.0 * sly)};
    const Poly p2 = {t * 4.0 * sly + kRoot3 * 4.0 * slx,
                     t * v0 + kRoot3 * u0};
    const Poly q =
        poly_sub(poly_mul(p1, p1), poly_mul(poly_mul(p2, p2), one_m_c2));
    for (const auto& root : poly_roots(q)) {
      if (std::abs(root.imag()) >= tol().root_imag) continue;
      if (std::abs(root.real()) > 1.0 + tol().root_clamp) continue;
      const double cc = std::clamp(root.real(), -1.0, 1.0);
      const double mag = std::sqrt(std::max(0.0, 1.0 - cc * cc));
      for (const double sign : {1.0, -1.0}) {
        const double ss = sign * mag;
        if (std::abs(poly_val(p1, cc) + poly_val(p2, cc) * ss) <
            tol().root_residual) {
          cands.push_back(std::atan2(ss, cc));
        }
      }
    }
  }

  // |delta|-stationarity of the full profile, via trig polynomials:
  // d1 = 1 + u0 c + v0 s + slx (2c^2 - 1) + sly (2sc)
  // d2 = u0 s - v0 c + slx (2sc) - sly (2c^2 - 1)
  const TrigPoly two_c2m1{{2.0, 0.0, -1.0}, {0.0}};
  const TrigPoly two_sc{{0.0}, {2.0, 0.0}};
  const TrigPoly d1 = TrigPoly::constant(1.0) +
                      TrigPoly::cosine().scaled(u0) +
                      TrigPoly::sine().scaled(v0) + two_c2m1.scaled(slx) +
                      two_sc.scaled(sly);
  const TrigPoly d2 = TrigPoly::sine().scaled(u0) -
                      TrigPoly::cosine().scaled(v0) + two_sc.scaled(slx) -
                      two_c2m1.scaled(sly);
  const TrigPoly h = d1 * d2.ddlam() - d2 * d1.ddlam();
  for (double lam : tp_roots(h)) cands.push_back(lam);
  // Delta_1 stationary points catch clamp onsets.
  for (double lam : tp_roots(d1.ddlam())) cands.push_back(lam);
  return cands;
}

double profile_max_analytic(const Vertex& v, double lx, double ly) {
  const std::vector<double> cands = v.kind == Kind::Same
                                        ? same_sign_candidates(v, lx, ly)
                                        : opposite_sign_candidates(v, lx, ly);
  double best = 0.0;
  for (double lam : cands) {
    const auto [d1, d2] = vertex_profile(v, lx, ly, lam);
    best = std::max(best, vertex_angle(d1, d2));
    if (best >= kHalfPi) return kHalfPi;
  }
  return best;
}

double profile_max_dense(const Vertex& v, double lx, double ly,
                         int n_lambda) {
  double best = 0.0;
  for (int i = 0; i < n_lambda; ++i) {
    const double lam = 2.0 * kPi * i / n_lambda;
    const auto [d1, d2] = vertex_profile(v, lx, ly, lam);
    best = std::max(best, vertex_angle(d1, d2));
    if (best >= kHalfPi) return kHalfPi;
  }
  return best;
}

}  // namespace boxvertex

// ---------------------------------------------------------------------------
// Worst-case |delta_lambda|
// ---------------------------------------------------------------------------

namespace {

constexpr int kLambdaRes = 2048;
constexpr int kPhiRes = 96;
// 0..1 in steps of 1/64 so that brute-force overlap grids (multiples of
// 1/32 at the certification resolution) are strict subsets.
constexpr int kAxisURes = 65;

struct ScanTables {
  std::array<double, kLambdaRes> c, s, cps, cms, ch, sh, chm, shm;
  std::array<double, kPhiRes> cphi, sphi;
};

const ScanTables& scan_tables() {
  static const ScanTables t = [] {
    ScanTables out;
    for (int i = 0; i < kLambdaRes; ++i) {
      const double lam = 2.0 * kPi * i / kLambdaRes;
      out.c[i] = std::cos(lam);
      out.s[i] = std::sin(lam);
      out.cps[i] = out.c[i] + out.s[i];
      out.cms[i] = out.c[i] - out.s[i];
      out.ch[i] = std::abs(std::cos(lam / 2.0));
      out.sh[i] = std::abs(std::sin(lam / 2.0));
      const double mu = lam - kHalfPi;
      out.chm[i] = std::abs(std::cos(mu / 2.0));
      out.shm[i] = std::abs(std::sin(mu / 2.0));
    }
    for (int j = 0; j < kPhiRes; ++j) {
      const double phi = 2.0 * kPi * j / kPhiRes;
      out.cphi[j] = std::cos(phi);
      out.sphi[j] = std::sin(phi);
    }
    return out;
  }();
  return t;
}

// Exact scan of the attainable (Delta_1, Delta_2) set when both coherent
// amplitudes vanish: the model reduces to a real overlap A plus the leak
// term, parametrized by (lambda, u, phi).
double sound_component_axis(const EnvelopeBox& box) {
  const ScanTables& t = scan_tables();
  const double a = box.a_max;
  const double a2m1 = a * a - 1.0;
  const double d = box.d;
  const double half_a = 0.5 * a;
  const int n_u = d == 0.0 ? 1 : kAxisURes;
  const int n_phi = d == 0.0 ? 1 : kPhiRes;

  bool clamped = false;
  double best_num = 0.0;  // max of q2^2 scaled against q1^2
  double best_den = 1.0;
  for (int i = 0; i < kLambdaRes && !clamped; ++i) {
    const double b1 = 1.0 + a2m1 * (t.cps[i] + 1.0);
    const double b2 = a2m1 * t.cms[i];
    // w1 is real on this axis; w2 = a*cms/2 + i*a/2.
    const double rw1 = half_a * (1.0 + t.cps[i]);
    const double rw2 = half_a * t.cms[i];
    for (int ju = 0; ju < n_u && !clamped; ++ju) {
      const double u = static_cast<double>(ju) / (kAxisURes - 1);
      const double rho = 4.0 * d * u;
      const double m = 2.0 * d * d * u * u;
      const double q1_base = b1 + m * t.cps[i];
      const double q2_base = b2 + m * t.cms[i];
      const double t1 = rho * rw1;
      const double t2 = rho * rw2;
      const double t3 = rho * half_a;
      for (int jp = 0; jp < n_phi; ++jp) {
        const double q1 = q1_base + t1 * t.cphi[jp];
        const double q2 = q2_base + t2 * t.cphi[jp] + t3 * t.sphi[jp];
        if (q1 <= 0.0) {
          clamped = true;
          break;
        }
        const double num = q2 * q2;
        const double den = q1 * q1;
        if (num * best_den > best_num * den) {
          best_num = num;
          best_den = den;
        }
      }
    }
  }
  if (clamped) return kHalfPi;
  return std::min(std::atan(std::sqrt(best_num / best_den)), kHalfPi);
}

// Conservative continuum cover for interior amplitude tuples: the constant
// terms range over a rectangle (with the leak-center fold absorbed into the
// upper L0 corner) and the leak cross-term over a disk of lambda-dependent
// radius; the corner angle plus the disk half-aperture bounds the error.
double sound_component_interior(const EnvelopeBox& box) {
  const ScanTables& t = scan_tables();
  const double d = box.d;
  const double l0_corners[2] = {box.l0_lo, box.l0_hi + 2.0 * d * d};
  const double lx_corners[2] = {box.lx_lo, box.lx_hi};
  const double ly_corners[2] = {-box.ly_mag, box.ly_mag};

  bool clamped = false;
  double min_cos = 1.0;
  for (int i = 0; i < kLambdaRes && !clamped; ++i) {
    const double scm = box.a_max * t.ch[i] + box.b_max * t.sh[i];
    const double ssm = box.a_max * t.chm[i] + box.b_max * t.shm[i];
    const double r = 4.0 * d * std::sqrt(scm * scm + ssm * ssm);
    for (const double l0 : l0_corners) {
      const double base1 = 1.0 + l0 * t.cps[i];
      const double base2 = l0 * t.cms[i];
      for (const double lx : lx_corners) {
        const double q1 = base1 + lx;
        if (q1 - r <= 0.0) {
          clamped = true;
          break;
        }
        for (const double ly : ly_corners) {
          const double q2 = base2 - ly;
          const double nq2 = q1 * q1 + q2 * q2;
          const double g =
              q1 * std::sqrt(nq2 - r * r) - std::abs(q2) * r;
          if (g <= 0.0) {
            clamped = true;
            break;
          }
          min_cos = std::min(min_cos, g / nq2);
        }
        if (clamped) break;
      }
      if (clamped) break;
    }
  }
  if (clamped) return kHalfPi;
  return std::min(std::acos(std::clamp(min_cos, -1.0, 1.0)), kHalfPi);
}

double sound_component(double eps_c, double eps_l, double eps_c_prime,
                       double eps_l_prime, const EnvelopeBox& box) {
  if (eps_c == 0.0 && eps_c_prime == 0.0) {
    return sound_component_axis(box);
  }
  (void)eps_l;
  (void)eps_l_prime;
  return sound_component_interior(box);
}

double folded_component(const EnvelopeBox& box, bool& dense_fallback) {
  const double l_plus = box.l0_hi + box.leak_up;
  const double l_minus = box.l0_lo - box.leak_dn;
  double best = 0.0;
  for (const double lx : {box.lx_lo, box.lx_hi}) {
    for (const double ly : {-box.ly_mag, box.ly_mag}) {
      for (const auto& v : boxvertex::vertices(l_plus, l_minus)) {
        double val;
        try {
          val = boxvertex::profile_max_analytic(v, lx, ly);
        } catch (const RootFindingFailure&) {
          dense_fallback = true;
          val = boxvertex::profile_max_dense(v, lx, ly, 4096);
        }
#ifndef NDEBUG
        val = std::max(val, boxvertex::profile_max_dense(v, lx, ly, 1024));
#endif
        best = std::max(best, val);
        if (best >= kHalfPi) return kHalfPi;
      }
    }
  }
  return best;
}

}  // namespace

WorstCase worst_case_delta_lambda(double eps_c, double eps_l,
                                  double eps_c_prime, double eps_l_prime) {
  const EnvelopeBox box =
      compute_envelope_box(eps_c, eps_l, eps_c_prime, eps_l_prime);
  WorstCase out;
  const double sound =
      sound_component(eps_c, eps_l, eps_c_prime, eps_l_prime, box);
  if (sound >= kHalfPi) {
    out.value = kHalfPi;
    return out;
  }
  const double folded = folded_component(box, out.dense_fallback);
  out.value = std::min(std::max(folded, sound), kHalfPi);
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force certification oracle
// ---------------------------------------------------------------------------

double brute_force_delta_lambda(double eps_c, double eps_l,
                                double eps_c_prime, double eps_l_prime,
                                int resolution) {
  if (resolution < 16) {
    throw Error("brute_force_delta_lambda: resolution must be at least 16");
  }
  validate_spam_params(
      {eps_c, 0.0, eps_l, eps_c_prime, 0.0, eps_l_prime});
  const int res = resolution;
  const double c = coherent_amplitude(eps_c, eps_l);
  const double cp = coherent_amplitude(eps_c_prime, eps_l_prime);
  const double leak_d = eps_l * eps_l_prime;

  std::vector<double> phases(res), cos_lam(res), sin_lam(res);
  for (int i = 0; i < res; ++i) {
    phases[i] = 2.0 * kPi * i / res;
    cos_lam[i] = std::cos(phases[i]);
    sin_lam[i] = std::sin(phases[i]);
  }
  // Overlap magnitudes use multiples of 1/res (inclusive of both ends) so
  // the grid at resolution r is a subset of the grid at any multiple of r;
  // the reported maximum is then monotone under resolution refinement.
  std::vector<Complex> leak_grid;
  leak_grid.reserve(static_cast<size_t>(res + 1) * res);
  for (int ju = 0; ju <= res; ++ju) {
    const double u = static_cast<double>(ju) / res;
    for (int jp = 0; jp < res; ++jp) {
      leak_grid.push_back(leak_d * u *
                          std::exp(Complex(0.0, phases[jp])));
    }
  }

  bool clamped = false;
  double best_num = 0.0;
  double best_den = 1.0;
  const Complex i_unit(0.0, 1.0);
  for (int ie = 0; ie < res && !clamped; ++ie) {
    const double ep = phases[ie];
    for (int iep = 0; iep < res && !clamped; ++iep) {
      const double epp = phases[iep];
      const Complex a =
          cp * c + eps_c_prime * eps_c * std::exp(i_unit * (ep - epp));
      const Complex b = c * eps_c_prime * std::exp(-i_unit * epp) +
                        cp * eps_c * std::exp(i_unit * ep);
      for (int il = 0; il < res && !clamped; ++il) {
        const Complex wc_phase(cos_lam[il], -sin_lam[il]);  // e^{-i lam}
        const Complex sc = 0.5 * a * (1.0 + wc_phase) +
                           0.5 * b * (1.0 - wc_phase);
        // lambda - pi/2: e^{-i mu} = e^{-i lam} * i
        const Complex ws_phase = wc_phase * i_unit;
        const Complex ss = 0.5 * a * (1.0 + ws_phase) +
                           0.5 * b * (1.0 - ws_phase);
        const double cl = cos_lam[il];
        const double sl = sin_lam[il];
        for (const Complex& leak : leak_grid) {
          const double pcr = sc.real() + leak.real();
          const double pci = sc.imag() + leak.imag();
          const double psr = ss.real() + leak.real();
          const double psi = ss.imag() + leak.imag();
          const double nx = 2.0 * (pcr * pcr + pci * pci) - 1.0;
          const double ny = 2.0 * (psr * psr + psi * psi) - 1.0;
          const double d1 = cl * nx + sl * ny;
          const double d2 = -sl * nx + cl * ny;
          if (d1 <= 0.0) {
            if (d1 != 0.0 || d2 != 0.0) {
              clamped = true;
              break;
            }
            continue;
          }
          const double num = d2 * d2;
          const double den = d1 * d1;
          if (num * best_den > best_num * den) {
            best_num = num;
            best_den = den;
          }
        }
      }
    }
  }
  if (clamped) return kHalfPi;
  return std::min(std::atan(std::sqrt(best_num / best_den)), kHalfPi);
}

// ---------------------------------------------------------------------------
// Success-region grid
// ---------------------------------------------------------------------------

RobustnessGrid success_region(const SuccessRegionSpec& spec) {
  if (spec.cells_per_axis < 1) {
    throw Error("success_region: need at least one cell per axis");
  }
  if (spec.max_eps < 0.0 ||
      2.0 * spec.max_eps * spec.max_eps > 1.0 + 1e-12) {
    throw AmplitudeBudgetExceeded(
        "success_region: tied amplitudes exceed the unit budget at the grid "
        "corner");
  }
  const int n = spec.cells_per_axis;
  RobustnessGrid grid;
  grid.axis_eps_c.resize(n);
  grid.axis_eps_l.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v = n == 1 ? 0.0 : spec.max_eps * i / (n - 1);
    grid.axis_eps_c[i] = v;
    grid.axis_eps_l[i] = v;
  }
  grid.values.assign(static_cast<size_t>(n) * n, 0.0);

  std::atomic<bool> fallback{false};
  parallel_for(n, [&](int ic) {
    const double ec = grid.axis_eps_c[ic];
    for (int il = 0; il < n; ++il) {
      const double el = grid.axis_eps_l[il];
      const WorstCase wc = worst_case_delta_lambda(ec, el, ec, el);
      grid.values[static_cast<size_t>(ic) * n + il] = wc.value;
      if (wc.dense_fallback) fallback.store(true, std::memory_order_relaxed);
    }
  });
  grid.any_dense_fallback = fallback.load();

  const double level = kPi / 3.0;
  for (int ic = 0; ic < n; ++ic) {
    for (int il = 0; il < n; ++il) {
      const double v = grid.values[static_cast<size_t>(ic) * n + il];
      if (v < level) continue;
      if (il == 0) {
        grid.contour.emplace_back(grid.axis_eps_c[ic], grid.axis_eps_l[0]);
      } else {
        const double v0 = grid.values[static_cast<size_t>(ic) * n + il - 1];
        const double e0 = grid.axis_eps_l[il - 1];
        const double e1 = grid.axis_eps_l[il];
        const double frac = v > v0 ? (level - v0) / (v - v0) : 1.0;
        grid.contour.emplace_back(grid.axis_eps_c[ic],
                                  e0 + frac * (e1 - e0));
      }
      break;
    }
  }

  int violations = 0;
  for (int ic = 0; ic < n; ++ic) {
    for (int il = 1; il < n; ++il) {
      if (grid.values[static_cast<size_t>(ic) * n + il] <
          grid.values[static_cast<size_t>(ic) * n + il - 1] - 1e-12) {
        ++violations;
      }
    }
  }
  for (int il = 0; il < n; ++il) {
    for (int ic = 1; ic < n; ++ic) {
      if (grid.values[static_cast<size_t>(ic) * n + il] <
          grid.values[static_cast<size_t>(ic - 1) * n + il] - 1e-12) {
        ++violations;
      }
    }
  }
  grid.monotonicity_violations = violations;
  return grid;
}

void write_grid_csv(const RobustnessGrid& grid, std::ostream& os) {
  os << "eps_c,eps_l,delta_lambda_max\n";
  char buf[96];
  const size_t n_l = grid.axis_eps_l.size();
  for (size_t ic = 0; ic < grid.axis_eps_c.size(); ++ic) {
    for (size_t il = 0; il < n_l; ++il) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n",
                    grid.axis_eps_c[ic], grid.axis_eps_l[il],
                    grid.values[ic * n_l + il]);
      os << buf;
    }
  }
}

void write_contour_csv(const RobustnessGrid& grid, std::ostream& os) {
  os << "eps_c,eps_l\n";
  char buf[64];
  for (const auto& [ec, el] : grid.contour) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", ec, el);
    os << buf;
  }
}

}  // namespace rpelab
