#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hurwitz {

/// Caller violated an interface contract (degree mismatch, bad index, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis of a procedure does not hold for its input.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A state or work budget ran out before a search or enumeration finished.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double estimate = 0.0)
        : std::runtime_error(what), estimate_(estimate) {}

    double estimate() const { return estimate_; }

private:
    double estimate_;
};

/// An exhaustive braid search failed to connect tuples that a classical
/// transitivity theorem says must be connected.
class OrbitMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hurwitz
