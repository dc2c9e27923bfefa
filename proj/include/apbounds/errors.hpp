#pragma once

#include <stdexcept>
#include <string>

namespace apb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// argument outside the mathematical domain of an operation
struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, long line_no)
      : Error(msg), line(line_no) {}
  long line;
};

struct ValidationError : Error {
  using Error::Error;
};

// a zero table is asked for heights it does not cover
struct CoverageError : Error {
  using Error::Error;
};

struct ContractError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct ResourceError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double best, double err)
      : Error(msg), best_value(best), best_error(err) {}
  double best_value;
  double best_error;
};

}  // namespace apb
