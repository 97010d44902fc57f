// Copyright 2026 The shadowqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Shared numeric aliases and the exception hierarchy used across the library.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace shadowqsd {

inline constexpr const char *kVersion = "0.3.1";

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// A name refers to something that was never declared.
class ReferenceError : public Error {
  public:
    using Error::Error;
};

/// Input is well formed but violates a physical or structural rule.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Arguments are outside the domain of the operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Caller broke a documented precondition.
class ContractError : public Error {
  public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// A numerical routine failed (non-finite data, non-convergence).
class NumericError : public Error {
  public:
    using Error::Error;
};

/// The overlap matrix kept no directions above the rank cut.
class DegenerateSubspaceError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Smallest power-of-two exponent covering `dim`, promoted to at least 1.
[[nodiscard]] inline std::size_t qubits_for_dimension(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    return n == 0 ? 1 : n;
}

} // namespace shadowqsd
