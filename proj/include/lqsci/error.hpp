// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file error.hpp
 * @brief Exception hierarchy shared by all lqsci modules.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lqsci {

/// Precondition violated by the caller (length mismatch, n > m, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text. Line numbers are 1-based; 0 means "not line specific".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An enumeration guard was exceeded.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// No encoder satisfying the injectivity requirement was found.
class GenerationFailure : public std::runtime_error {
 public:
  GenerationFailure(const std::string& what, std::size_t first, std::size_t second)
      : std::runtime_error(what), first_(first), second_(second) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Decoder training produced a non-finite loss.
class TrainingFailure : public std::runtime_error {
 public:
  TrainingFailure(const std::string& what, long step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

/// Iterative eigensolver hit its iteration cap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Invalid circuit description (qubit or parameter index out of range).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite energy during optimization or construction failure of a trial state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment configuration problem (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixture could not be loaded or is inconsistent (CLI exit code 3).
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lqsci
