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

#include "rpelab/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace rpelab {

namespace {

bool is_pauli_word(const std::string& w) {
  if (w.empty()) return false;
  for (char c : w) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') return false;
  }
  return true;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PauliHamiltonian parse_hamiltonian(std::istream& text) {
  PauliHamiltonian h;
  std::map<std::string, double> merged;
  std::string raw;
  int line_no = 0;
  bool saw_data = false;
  while (std::getline(text, raw)) {
    ++line_no;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("label", 0) == 0 &&
        (line.size() == 5 || std::isspace(static_cast<unsigned char>(line[5])))) {
      h.label = trim(line.substr(5));
      continue;
    }
    std::istringstream fields(line);
    std::string word, coeff_text, extra;
    fields >> word >> coeff_text;
    if (word.empty() || coeff_text.empty() || (fields >> extra)) {
      throw MalformedLine(line_no, "expected '<PauliWord> <coefficient>'");
    }
    if (!is_pauli_word(word)) {
      throw MalformedLine(line_no, "invalid Pauli word '" + word + "'");
    }
    size_t used = 0;
    double coeff = 0.0;
    try {
      coeff = std::stod(coeff_text, &used);
    } catch (const std::exception&) {
      throw MalformedLine(line_no, "invalid coefficient '" + coeff_text + "'");
    }
    if (used != coeff_text.size() || !std::isfinite(coeff)) {
      throw MalformedLine(line_no, "invalid coefficient '" + coeff_text + "'");
    }
    if (!saw_data) {
      h.n_qubits = static_cast<int>(word.size());
      saw_data = true;
    } else if (static_cast<int>(word.size()) != h.n_qubits) {
      throw InconsistentWordLength(
          line_no, "word length " + std::to_string(word.size()) +
                       " does not match register size " +
                       std::to_string(h.n_qubits));
    }
    merged[word] += coeff;
  }
  if (!saw_data) {
    throw EmptyInput("no Hamiltonian terms found");
  }
  for (const auto& [word, coeff] : merged) {
    h.terms.push_back({word, coeff});
  }
  return h;
}

PauliHamiltonian parse_hamiltonian_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw EmptyInput("cannot open '" + path + "'");
  }
  return parse_hamiltonian(in);
}

std::string serialize(const PauliHamiltonian& h) {
  std::vector<PauliTerm> sorted = h.terms;
  std::sort(sorted.begin(), sorted.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.word < b.word; });
  std::ostringstream os;
  if (!h.label.empty()) os << "label " << h.label << "\n";
  char buf[64];
  for (const auto& t : sorted) {
    std::snprintf(buf, sizeof(buf), "%.17g", t.coefficient);
    os << t.word << " " << buf << "\n";
  }
  return os.str();
}

CMatrix to_dense(const PauliHamiltonian& h) {
  if (h.n_qubits > 12) {
    throw DimensionTooLarge("to_dense: n_qubits " + std::to_string(h.n_qubits) +
                            " exceeds 12");
  }
  const int n = h.n_qubits;
  const long long dim = 1LL << n;
  CMatrix out = CMatrix::Zero(dim, dim);
  // Each Pauli word is a signed permutation, so fill column by column
  // instead of forming Kronecker products.
  for (const auto& term : h.terms) {
    for (long long col = 0; col < dim; ++col) {
      long long row = col;
      Complex amp(term.coefficient, 0.0);
      for (int q = 0; q < n; ++q) {
        const char p = term.word[n - 1 - q];  // leftmost char is qubit n-1
        const long long bit = (col >> q) & 1;
        switch (p) {
          case 'I':
            break;
          case 'X':
            row ^= (1LL << q);
            break;
          case 'Y':
            row ^= (1LL << q);
            amp *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
            break;
          case 'Z':
            if (bit) amp = -amp;
            break;
        }
      }
      out(row, col) += amp;
    }
  }
  return out;
}

double trace(const PauliHamiltonian& h) {
  const std::string identity(h.n_qubits, 'I');
  for (const auto& t : h.terms) {
    if (t.word == identity) {
      return std::ldexp(t.coefficient, h.n_qubits);
    }
  }
  return 0.0;
}

Spectrum spectrum(const PauliHamiltonian& h) {
  return eig_hermitian(to_dense(h));
}

}  // namespace rpelab
