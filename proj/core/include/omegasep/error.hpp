#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace omegasep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Syntax errors carry a 1-based line/column; schema
/// errors carry line 0 and name the offending JSON path instead.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

class ForeignSymbol : public Error {
 public:
  using Error::Error;
};

/// Raised when a construction would exceed its configured size budget.
class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The two inputs of a separation construction intersect. `witness` holds a
/// finite word (profinite case) or the prefix/period of an ultimately
/// periodic word (omega case) when one could be produced.
class NotDisjoint : public Error {
 public:
  NotDisjoint(const std::string& what, std::vector<std::string> witness_prefix = {},
              std::vector<std::string> witness_period = {}, bool has_witness = false)
      : Error(what),
        prefix_(std::move(witness_prefix)),
        period_(std::move(witness_period)),
        has_witness_(has_witness) {}

  bool has_witness() const { return has_witness_; }
  const std::vector<std::string>& witness_prefix() const { return prefix_; }
  const std::vector<std::string>& witness_period() const { return period_; }

 private:
  std::vector<std::string> prefix_;
  std::vector<std::string> period_;
  bool has_witness_;
};

}  // namespace omegasep
