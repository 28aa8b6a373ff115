// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace boolvox {

/// Invalid parameters or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The weight equations cannot be met on the requested support (exit code 3).
class InfeasibleError : public std::runtime_error {
  public:
    InfeasibleError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

/// File could not be read or written (exit code 4).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed weight file; carries the 1-based line number (0 if not line specific).
class WeightFileError : public std::runtime_error {
  public:
    WeightFileError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

  private:
    int line_;
};

/// Successive spherical quadrature refinements did not agree.
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The truncated hit-and-miss expansion left [0, 1]; the grid width is too coarse.
class ExpansionRangeError : public std::domain_error {
  public:
    ExpansionRangeError(const std::string& what, double value)
        : std::domain_error(what), value_(value) {}
    double value() const noexcept { return value_; }

  private:
    double value_;
};

}  // namespace boolvox
