#pragma once

#include <stdexcept>
#include <string>

namespace fade {

/// Argument outside the mathematical domain of an operation (bad order,
/// inadmissible exponent, index out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure could not deliver the promised accuracy: a series
/// hit its term cap, two quadrature levels disagreed, or a value overflowed.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fade
