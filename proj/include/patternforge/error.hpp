#pragma once

#include <stdexcept>
#include <string>

namespace pf {

/// Malformed ordinal text or file content.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Well-formed ordinal text whose summands are not in non-increasing order.
class NonCanonicalError : public ParseError {
  public:
    using ParseError::ParseError;
};

/// An operation was called with arguments violating its precondition.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace pf
