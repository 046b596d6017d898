#pragma once

#include <stdexcept>
#include <string>

namespace asympl {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (scalar/form/manifest grammar), with position info in the message.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

/// Mixing values attached to different charts, unknown coordinates, arity mismatches.
struct chart_error : error {
    using error::error;
};

/// Value outside the supported expression class (e.g. exp of a non-polynomial argument).
struct domain_error : error {
    using error::error;
};

/// Evaluation failure at a concrete point (division by zero, ln of a non-positive value).
struct eval_error : error {
    using error::error;
};

/// A sound zero-test could not certify either answer within the sampling budget.
struct indeterminate_error : error {
    using error::error;
};

/// Violated mathematical precondition (degenerate form, failing verdict used as input).
struct math_error : error {
    using error::error;
};

} // namespace asympl
