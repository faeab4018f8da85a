#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace teleo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is a byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected = {});

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Evaluation failure: missing variable, division by zero, non-finite value.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A model (or operator result) that breaks a structural rule.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A file that does not match its schema. `pointer` is a JSON pointer or a
/// "line:N" locator for CSV input.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& message, std::string pointer);
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

/// Rejection sampling gave up before collecting the requested rows.
class InfeasibleEvidence : public Error {
 public:
  InfeasibleEvidence(const std::string& message, double acceptance_rate);
  double acceptance_rate() const noexcept { return acceptance_rate_; }

 private:
  double acceptance_rate_;
};

/// Statistical input that admits no answer (constant column, too few rows).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace teleo
