#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace graphpencil {

enum class ErrorKind {
  Validation,
  Parse,
  Io,
  Budget,
  Gluing,
  MissingGlyph,
  Degeneracy,
  Conditioning,
  Numerical,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base class for every error raised by the library. Carries a kind and an
/// optional pipeline stage label that callers may attach while propagating.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

  void set_stage(std::string stage) {
    stage_ = std::move(stage);
    full_ = "[" + stage_ + "] " + message_;
  }

  const char* what() const noexcept override {
    return stage_.empty() ? std::runtime_error::what() : full_.c_str();
  }

 private:
  ErrorKind kind_;
  std::string message_;
  std::string stage_;
  std::string full_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& m) : Error(ErrorKind::Validation, m) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& m, long line)
      : Error(ErrorKind::Parse, line > 0 ? "line " + std::to_string(line) + ": " + m : m),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::Io, m) {}
};

/// An enumeration or table request exceeds its size budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& m) : Error(ErrorKind::Budget, m) {}
};

class GluingError : public Error {
 public:
  explicit GluingError(const std::string& m) : Error(ErrorKind::Gluing, m) {}
};

class MissingGlyphError : public Error {
 public:
  explicit MissingGlyphError(const std::string& m) : Error(ErrorKind::MissingGlyph, m) {}
};

/// Latent degrees (or coin biases) are not separated: the Vandermonde
/// matrix of the moment pencil is singular.
class DegeneracyError : public Error {
 public:
  explicit DegeneracyError(const std::string& m) : Error(ErrorKind::Degeneracy, m) {}
};

/// A pencil matrix is numerically rank deficient.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& m, std::vector<double> singular_values)
      : Error(ErrorKind::Conditioning, m), singular_values_(std::move(singular_values)) {}
  const std::vector<double>& singular_values() const noexcept { return singular_values_; }

 private:
  std::vector<double> singular_values_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& m) : Error(ErrorKind::Numerical, m) {}
};

}  // namespace graphpencil
