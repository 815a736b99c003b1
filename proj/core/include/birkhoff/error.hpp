#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace birkhoff {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A matrix failed the doubly stochastic check. `index` is the offending row,
// column or flattened entry (row * n + col) depending on `kind`.
class NotDoublyStochastic : public Error {
 public:
  enum class Kind { Row, Column, Entry, Shape };

  NotDoublyStochastic(Kind kind, std::size_t index, double deviation);

  Kind kind() const noexcept { return kind_; }
  std::size_t index() const noexcept { return index_; }
  double deviation() const noexcept { return deviation_; }

 private:
  Kind kind_;
  std::size_t index_;
  double deviation_;
};

class DimensionTooLargeForExactScore : public Error {
 public:
  using Error::Error;
};

class NoPerfectMatching : public Error {
 public:
  using Error::Error;
};

class TermBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyPool : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotInB : public Error {
 public:
  using Error::Error;
};

class MaskLeak : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based; 0 when the error is not tied to a
// particular line (e.g. unexpected end of file).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class GuaranteeViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace birkhoff
