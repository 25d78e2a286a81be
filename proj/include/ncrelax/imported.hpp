// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenarios whose moments are given directly as numbered symbols rather than
// generated from operators.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncrelax/matrix.hpp"

namespace ncr {

/// coefficient * <w_id>(*), or coefficient * <1> for a constant.
struct MomentToken {
  double coefficient = 1.0;
  std::size_t id = 0;
  bool conjugated = false;
  bool constant = false;

  bool operator==(const MomentToken&) const = default;
};

class MomentParseError : public std::invalid_argument {
 public:
  MomentParseError(const std::string& text, std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Grammar: ['-'] ( decimal-with-point | [real] '#' integer ['*'] | integer ['*'] ).
MomentToken parse_moment_string(const std::string& text);
/// Shortest text that parses back to the same token.
std::string render_token(const MomentToken& t);

enum class ImportMode { general, hermitian, symmetric };

class ImportedScenario {
 public:
  explicit ImportedScenario(bool real = false, double zero_tolerance = 1e-12);

  bool real() const { return real_; }
  MatrixSystem& system() { return system_; }
  SymbolRegistry& registry() { return system_.registry(); }

  /// Throws std::invalid_argument on inconsistent structure (hermitian and
  /// symmetric modes); may mark symbols real (hermitian mode).
  SymbolicMatrix import_matrix(const std::vector<std::vector<std::string>>& grid, ImportMode mode);
  Polynomial import_polynomial(const std::vector<std::string>& tokens);

  /// Products need operator relations, which imported scenarios lack.
  [[noreturn]] Polynomial multiply(const Polynomial& a, const Polynomial& b) const;

 private:
  Polynomial to_polynomial(const MomentToken& t);
  void declare(const MomentToken& t);

  bool real_;
  MatrixSystem system_;
};

/// One row per non-empty line, comma-separated tokens (surrounding blanks and
/// optional double quotes stripped).
std::vector<std::vector<std::string>> read_grid(std::istream& in);

}  // namespace ncr
