#pragma once

#include <stdexcept>
#include <string>

namespace suppind {

// Malformed or inconsistent user input (bad intervals, duplicate atoms,
// mismatched grids). The CLI maps this to exit code 2.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure with a source position; a kind of InvalidInput.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, int line, int column)
      : InvalidInput(what + " (line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Input describes something that is not a probability distribution
// (mass != 1, non-monotone CDF, negative mass). Exit code 3.
class InvalidDistribution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or finite-difference failure. Exit code 4.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace suppind
