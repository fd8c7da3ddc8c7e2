#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcs {

enum class ErrorKind {
  validation,   // invariant or precondition violated by an input
  shortage,     // not enough candidates / occurrences / contexts
  io,           // unreadable or unwritable file
  schema,       // malformed record in a structured file
  domain,       // numeric argument outside its domain
  alignment,    // word span cannot be aligned to token boundaries
  vocabulary,   // target token unknown to the oracle
  replay_miss,  // trace oracle has no entry for a query
  oracle,       // step oracle failed mid-record
};

// Process exit code for a failure of the given kind:
// 0 success, 1 validation/shortage, 2 I/O, 3 schema violation.
int exit_code(ErrorKind kind) noexcept;

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed line in a line-oriented input file. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ShortageError : public Error {
 public:
  ShortageError(std::size_t found, std::size_t needed, const std::string& what);
  std::size_t found() const noexcept { return found_; }
  std::size_t needed() const noexcept { return needed_; }

 private:
  std::size_t found_;
  std::size_t needed_;
};

/// Failure while walking a word's token path; carries the step that failed.
class AuditError : public Error {
 public:
  AuditError(ErrorKind kind, std::size_t step, const std::string& what)
      : Error(kind, what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace wcs
