#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

/// Thrown when an operation's preconditions on its arguments are violated.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when exact integer arithmetic would overflow 64 bits.
class ArithmeticOverflow : public std::overflow_error {
public:
    explicit ArithmeticOverflow(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace cartan
