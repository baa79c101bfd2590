#pragma once

#include <stdexcept>

namespace gpc {

// Invalid parameters, degenerate datasets, bad run configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed file contents (CSV cells, s-expressions, profiles).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid file that violates the expected schema
// (wrong label arity, missing keys, mismatched column counts).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gpc
