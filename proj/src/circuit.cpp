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

#include "rpelab/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rpelab {

Gate Gate::x(int q) {
  Gate g;
  g.kind = Kind::X;
  g.q = q;
  return g;
}

Gate Gate::h(int q) {
  Gate g;
  g.kind = Kind::H;
  g.q = q;
  return g;
}

Gate Gate::phase(int q, double angle) {
  Gate g;
  g.kind = Kind::Phase;
  g.q = q;
  g.angle = angle;
  return g;
}

Gate Gate::cnot(int control, int target) {
  Gate g;
  g.kind = Kind::Cnot;
  g.q = control;
  g.q2 = target;
  return g;
}

Gate Gate::dense(CMatrix m, std::vector<int> qubits) {
  Gate g;
  g.kind = Kind::Dense;
  g.matrix = std::move(m);
  g.qubits = std::move(qubits);
  const long long want = 1LL << g.qubits.size();
  if (g.matrix.rows() != want || g.matrix.cols() != want) {
    throw DimensionMismatch("dense gate: matrix dim does not match qubit count");
  }
  return g;
}

Gate Gate::dagger() const {
  Gate g = *this;
  switch (kind) {
    case Kind::X:
    case Kind::H:
    case Kind::Cnot:
      break;
    case Kind::Phase:
      g.angle = -angle;
      break;
    case Kind::Dense:
      g.matrix = matrix.adjoint();
      break;
  }
  return g;
}

AbSelect ab_select(std::int64_t a, std::int64_t b, int n) {
  const std::int64_t dim = 1LL << n;
  if (a < 0 || a >= dim || b < 0 || b >= dim) {
    throw IndexOutOfRange("ab_select: basis index outside the register");
  }
  if (a == b) {
    throw EqualIndices("ab_select: a and b must differ");
  }
  Circuit c;
  c.n_qubits = n;
  int j = -1;
  int flip = 0;
  for (int i = 0; i < n; ++i) {
    const int ai = static_cast<int>((a >> i) & 1);
    const int bi = static_cast<int>((b >> i) & 1);
    if (ai == bi) {
      if (ai == 1) c.gates.push_back(Gate::x(i));
    } else if (j < 0) {
      j = i;
      flip = 1 - bi;
    } else {
      c.gates.push_back(Gate::cnot(j, i));
      if (ai == 1) c.gates.push_back(Gate::x(i));
    }
  }
  if (flip) c.gates.push_back(Gate::x(j));
  return {std::move(c), j};
}

Circuit build_B(std::int64_t a, std::int64_t b, double beta, int n) {
  AbSelect sel = ab_select(a, b, n);
  Circuit c;
  c.n_qubits = n;
  c.gates.push_back(Gate::h(sel.control));
  if (beta != 0.0) {
    c.gates.push_back(Gate::phase(sel.control, beta));
  }
  for (auto& g : sel.circuit.gates) {
    c.gates.push_back(std::move(g));
  }
  return c;
}

Gate build_A(const Spectrum& spec) {
  const int dim = spec.dim();
  const double defect =
      max_abs(spec.eigenvectors.adjoint() * spec.eigenvectors -
              CMatrix::Identity(dim, dim));
  if (defect > tol().orthonormality) {
    std::ostringstream os;
    os << "build_A: eigenvector columns not orthonormal (defect " << defect
       << ")";
    throw NonUnitary(os.str());
  }
  CMatrix m = spec.eigenvectors;
  for (int c = 0; c < dim; ++c) {
    int best = 0;
    double best_mag = std::abs(m(0, c));
    for (int r = 1; r < dim; ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    const Complex pivot = m(best, c);
    if (best_mag > 0) {
      m.col(c) *= std::conj(pivot) / best_mag;
    }
  }
  int n = 0;
  while ((1 << n) < dim) ++n;
  std::vector<int> qubits(n);
  for (int q = 0; q < n; ++q) qubits[q] = q;
  return Gate::dense(std::move(m), std::move(qubits));
}

namespace {

void apply_gate(const Gate& g, CVector& v, int n) {
  const long long dim = v.size();
  switch (g.kind) {
    case Gate::Kind::X: {
      const long long mask = 1LL << g.q;
      for (long long i = 0; i < dim; ++i) {
        if (!(i & mask)) std::swap(v[i], v[i | mask]);
      }
      break;
    }
    case Gate::Kind::H: {
      const long long mask = 1LL << g.q;
      const double r = 1.0 / std::sqrt(2.0);
      for (long long i = 0; i < dim; ++i) {
        if (!(i & mask)) {
          const Complex lo = v[i];
          const Complex hi = v[i | mask];
          v[i] = r * (lo + hi);
          v[i | mask] = r * (lo - hi);
        }
      }
      break;
    }
    case Gate::Kind::Phase: {
      const long long mask = 1LL << g.q;
      const Complex w = std::exp(Complex(0.0, g.angle));
      for (long long i = 0; i < dim; ++i) {
        if (i & mask) v[i] *= w;
      }
      break;
    }
    case Gate::Kind::Cnot: {
      const long long cm = 1LL << g.q;
      const long long tm = 1LL << g.q2;
      for (long long i = 0; i < dim; ++i) {
        if ((i & cm) && !(i & tm)) std::swap(v[i], v[i | tm]);
      }
      break;
    }
    case Gate::Kind::Dense: {
      const int k = static_cast<int>(g.qubits.size());
      const long long sub = 1LL << k;
      // Enumerate assignments of the untouched qubits, gather the touched
      // amplitudes (qubits[p] is bit p of the sub-index), apply, scatter.
      long long rest_mask = dim - 1;
      for (int p = 0; p < k; ++p) rest_mask &= ~(1LL << g.qubits[p]);
      CVector local(sub), mixed(sub);
      for (long long base = 0; base < dim; ++base) {
        if ((base & rest_mask) != base) continue;
        for (long long s = 0; s < sub; ++s) {
          long long idx = base;
          for (int p = 0; p < k; ++p) {
            if ((s >> p) & 1) idx |= 1LL << g.qubits[p];
          }
          local[s] = v[idx];
        }
        mixed = g.matrix * local;
        for (long long s = 0; s < sub; ++s) {
          long long idx = base;
          for (int p = 0; p < k; ++p) {
            if ((s >> p) & 1) idx |= 1LL << g.qubits[p];
          }
          v[idx] = mixed[s];
        }
      }
      break;
    }
  }
  (void)n;
}

}  // namespace

CVector simulate(const Circuit& c, const CVector& initial) {
  const long long dim = 1LL << c.n_qubits;
  if (initial.size() != dim) {
    throw DimensionMismatch("simulate: state dimension does not match circuit");
  }
  CVector v = initial;
  for (const auto& g : c.gates) {
    apply_gate(g, v, c.n_qubits);
  }
  return v;
}

Circuit inverse(const Circuit& c) {
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    out.gates.push_back(it->dagger());
  }
  return out;
}

std::int64_t controlled_cost(std::int64_t s, std::int64_t t) {
  return 6 * t + 2 * s;
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n_qubits << "\n";
  char buf[64];
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case Gate::Kind::X:
        os << "X " << g.q << "\n";
        break;
      case Gate::Kind::H:
        os << "H " << g.q << "\n";
        break;
      case Gate::Kind::Phase:
        std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
        os << "PHASE " << g.q << " " << buf << "\n";
        break;
      case Gate::Kind::Cnot:
        os << "CNOT " << g.q << " " << g.q2 << "\n";
        break;
      case Gate::Kind::Dense: {
        os << "DENSE [";
        for (size_t i = 0; i < g.qubits.size(); ++i) {
          os << (i ? " " : "") << g.qubits[i];
        }
        os << "]";
        for (long long r = 0; r < g.matrix.rows(); ++r) {
          for (long long col = 0; col < g.matrix.cols(); ++col) {
            const Complex z = g.matrix(r, col);
            std::snprintf(buf, sizeof(buf), " (%.17g,%.17g)", z.real(),
                          z.imag());
            os << buf;
          }
        }
        os << "\n";
        break;
      }
    }
  }
  return os.str();
}

}  // namespace rpelab
