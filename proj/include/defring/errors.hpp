#pragma once
#include <stdexcept>
#include <string>

namespace defring {

// Error taxonomy mirrored by the CLI exit codes: config 2, budget 3, invariant 4.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a rational constant has a non-invertible denominator in the
// evaluation structure, or a bar term is evaluated without an involution.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// classify found zero or more than one true body among (plus, minus, zero).
struct partition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  int line, col;
  parse_error(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), col(col_) {}
};

}  // namespace defring
