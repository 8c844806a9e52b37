#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posdec {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula or instance text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownAtom : public Error {
 public:
  using Error::Error;
};

/// A truth-table query was asked beyond its atom bound with DPLL disabled.
class BackendLimit : public Error {
 public:
  using Error::Error;
};

class ScaleError : public Error {
 public:
  using Error::Error;
};

class VocabError : public Error {
 public:
  using Error::Error;
};

/// K* or G* is inconsistent, so the possibility distributions are not normalized.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// K* together with the decision literals is inconsistent.
class InfeasibleDecision : public Error {
 public:
  using Error::Error;
};

class EnumerationLimit : public Error {
 public:
  using Error::Error;
};

class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

class UnknownDecision : public Error {
 public:
  using Error::Error;
};

}  // namespace posdec
