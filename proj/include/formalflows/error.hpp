#ifndef FORMALFLOWS_ERROR_HPP
#define FORMALFLOWS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace formalflows {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Values from different rings were mixed, or a ring construction is invalid
/// (composite modulus, fraction field of a finite-characteristic ring, ...).
struct ring_error : error {
  using error::error;
};

/// An operation precondition does not hold (non-unit inverse, zero series
/// vertex, dimension/cap mismatch, constant term in a map component, ...).
struct precondition_error : error {
  using error::error;
};

/// A certification step failed: the computed object does not satisfy the
/// property it was required to (non-integral fit coefficients, commutation
/// check failure, ...).
struct verification_error : error {
  using error::error;
};

/// Text input could not be parsed; carries a 1-based position.
struct parse_error : error {
  int line;
  int column;
  parse_error(const std::string& what, int line_, int column_)
      : error(what + " at line " + std::to_string(line_) + ", column " +
              std::to_string(column_)),
        line(line_),
        column(column_) {}
};

}  // namespace formalflows

#endif
