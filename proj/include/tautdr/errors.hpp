#pragma once

#include <stdexcept>
#include <string>

namespace tautdr {

/// Input violates an operation's precondition (unstable (g,n), bad A, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Interpolated r-polynomial disagrees with a held-out direct evaluation.
class PolynomialityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request exceeds what the product engine supports.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Laurent series truncated too early for the requested coefficient.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tautdr
