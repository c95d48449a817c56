// Copyright 2026 The qpa Authors
//
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

#ifndef QPA_ERROR_HPP_
#define QPA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace qpa {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. s = 0 for
/// a quantity that only exists as a limit there).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dimension or enumeration size above a configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A classical-quantum state failed validation. `invariant()` names the
/// violated condition so that callers can report it verbatim.
class InvalidStateError : public Error {
 public:
  InvalidStateError(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// Hash family and state alphabet do not fit together.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (JSON, family descriptors, preset names).
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpa

#endif  // QPA_ERROR_HPP_
