#pragma once

#include <stdexcept>
#include <string>

namespace gq {

/// Root of every error raised by the library. Each module derives its own
/// kinds so callers can dispatch on the failure without parsing messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class UnsupportedExpressionError : public Error {
 public:
  using Error::Error;
};

/// Randomized equivalence could not find a single usable sample point.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class OrthogonalityError : public Error {
 public:
  OrthogonalityError(std::string message, int first, int second)
      : Error(std::move(message)), first_(first), second_(second) {}
  int first() const { return first_; }
  int second() const { return second_; }

 private:
  int first_;
  int second_;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class InvalidPotentialError : public Error {
 public:
  using Error::Error;
};

class UnsupportedHamiltonianError : public Error {
 public:
  using Error::Error;
};

/// Degree-one residue of the density equation that is not a gradient of the
/// quantum Hamilton-Jacobi bracket.
class SplitFailureError : public Error {
 public:
  SplitFailureError(std::string message, std::string residue)
      : Error(std::move(message)), residue_(std::move(residue)) {}
  const std::string& residue() const { return residue_; }

 private:
  std::string residue_;
};

class SingularPotentialError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

struct SourcePosition {
  int line = 1;
  int column = 1;
};

class SyntaxError : public Error {
 public:
  /// what() reads "[file:]line:column: message".
  SyntaxError(const std::string& message, SourcePosition pos, const std::string& file = "")
      : Error((file.empty() ? "" : file + ":") + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
              message),
        message_(message),
        pos_(pos) {}
  SourcePosition position() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  SourcePosition pos_;
};

class SemanticError : public Error {
 public:
  /// what() reads "[file:]line:column: message".
  SemanticError(const std::string& message, SourcePosition pos, const std::string& file = "")
      : Error((file.empty() ? "" : file + ":") + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
              message),
        message_(message),
        pos_(pos) {}
  SourcePosition position() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  SourcePosition pos_;
};

}  // namespace gq
