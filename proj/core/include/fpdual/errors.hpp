// Copyright 2026 The fpdual Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPDUAL_ERRORS_HPP_
#define FPDUAL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fpdual {

// Invalid argument to a library call (bad dimension, out-of-range horizon...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A linear system with a (near-)zero pivot where the contract requires one.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (e.g. a non-symmetric matrix
// passed to a symmetric eigensolver).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operator has no evaluable resolvent (non-linear with no registered
// closed form).
class UnsupportedOperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Step-size synthesis hit a singular column system; `column` is the
// (1-based) column index that failed.
class SynthesisFailure : public std::runtime_error {
 public:
  SynthesisFailure(const std::string& what, int column)
      : std::runtime_error(what), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

// Two algebraically identical computation routes disagreed beyond rounding.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed or unsupported experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (CSV schema mismatch, empty file...).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fpdual

#endif  // FPDUAL_ERRORS_HPP_
