#pragma once

#include <stdexcept>
#include <string>

namespace milnor {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two values over different variable tables were combined.
struct table_mismatch : error {
    explicit table_mismatch(const std::string& msg) : error(msg) {}
};

/// Checked exponent or coefficient arithmetic overflowed.
struct overflow_error : error {
    explicit overflow_error(const std::string& msg) : error(msg) {}
};

/// A configured degree/dimension/step budget was exceeded.
struct resource_exhausted : error {
    explicit resource_exhausted(const std::string& msg) : error(msg) {}
};

/// A structural invariant failed; indicates a bug, not a data condition.
struct invariant_violation : error {
    explicit invariant_violation(const std::string& msg) : error(msg) {}
};

}  // namespace milnor
