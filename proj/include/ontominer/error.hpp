#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontominer {

// Base of every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An axiom whose nesting has no clausal translation in the supported fragment.
class UnsupportedAxiom : public Error {
 public:
  using Error::Error;
};

class InconsistentKB : public Error {
 public:
  InconsistentKB() : Error("knowledge base is inconsistent") {}
  explicit InconsistentKB(const std::string& what) : Error(what) {}
};

class BranchLimitExceeded : public Error {
 public:
  explicit BranchLimitExceeded(std::size_t limit)
      : Error("chase exceeded " + std::to_string(limit) + " live branches") {}
};

class EmptyReferenceConcept : public Error {
 public:
  explicit EmptyReferenceConcept(const std::string& name)
      : Error("reference concept '" + name + "' has no certain instances") {}
};

}  // namespace ontominer
