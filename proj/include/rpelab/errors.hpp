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

#ifndef RPELAB_ERRORS_HPP
#define RPELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rpelab {

// Base class for all library errors so callers can catch one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(const std::string& what) : Error(what) {}
};

class NonUnitary : public Error {
 public:
  explicit NonUnitary(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class DimensionTooLarge : public Error {
 public:
  explicit DimensionTooLarge(const std::string& what) : Error(what) {}
};

class MalformedLine : public Error {
 public:
  MalformedLine(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InconsistentWordLength : public Error {
 public:
  InconsistentWordLength(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what) : Error(what) {}
};

class EqualIndices : public Error {
 public:
  explicit EqualIndices(const std::string& what) : Error(what) {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

class LeakNotOrthogonal : public Error {
 public:
  explicit LeakNotOrthogonal(const std::string& what) : Error(what) {}
};

class AmplitudeBudgetExceeded : public Error {
 public:
  explicit AmplitudeBudgetExceeded(const std::string& what) : Error(what) {}
};

class DisconnectedPairGraph : public Error {
 public:
  explicit DisconnectedPairGraph(const std::string& what) : Error(what) {}
};

class InconsistentDifferences : public Error {
 public:
  explicit InconsistentDifferences(const std::string& what) : Error(what) {}
};

// Fatal in exact mode only; in sampled mode the flag is recorded instead.
class DegenerateProbabilities : public Error {
 public:
  explicit DegenerateProbabilities(const std::string& what) : Error(what) {}
};

// Companion-matrix eigensolve did not converge; callers fall back to a
// dense scan where one is available.
class RootFindingFailure : public Error {
 public:
  explicit RootFindingFailure(const std::string& what) : Error(what) {}
};

}  // namespace rpelab

#endif  // RPELAB_ERRORS_HPP
