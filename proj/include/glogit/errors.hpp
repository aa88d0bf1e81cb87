#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glogit {

// Invalid parameter values (non-positive shapes, out-of-range probabilities).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Data that violates a model precondition: non-binary response, a single
// response class, mismatched dimensions.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Factorization failures and other numerical breakdowns.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootError : public std::runtime_error {
 public:
  enum class Kind { no_sign_change, no_convergence };
  RootError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// line and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace glogit
