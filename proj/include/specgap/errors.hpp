#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

// Input graph is not connected but the operation requires it.
// The CLI maps this to its own exit code, distinct from parse failures.
struct DisconnectedGraphError : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed textual input (edge list or graph6). line == 0 when not line-oriented.
struct ParseError : std::runtime_error {
    int line;
    explicit ParseError(const std::string& msg, int line_ = 0)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
};

// Numerical postcondition failed (eigensolver non-convergence, non-finite input,
// an invariant like trace preservation violated beyond tolerance).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace specgap
