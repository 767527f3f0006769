#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rtl {

/// Base class for every failure reported by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value would exceed a configured size cap (bit size, domain size, depth).
class ResourceError : public Error {
public:
    using Error::Error;
};

/// An inverse scan found no argument reaching the requested value.
class NotAttained : public Error {
public:
    using Error::Error;
};

/// A budgeted evaluation ran out of steps.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t steps)
        : Error(what + " (steps consumed: " + std::to_string(steps) + ")"), steps_(steps) {}

    std::uint64_t steps() const noexcept { return steps_; }

private:
    std::uint64_t steps_;
};

/// A formula was evaluated outside the region where it is asserted to hold.
class GuardViolation : public Error {
public:
    using Error::Error;
};

/// Malformed input: bad literal, wrong widths, inconsistent parameters.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A tabulated grid lacks a requested entry.
class MissingEntry : public Error {
public:
    using Error::Error;
};

/// A compression could not be built for the requested domain.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace rtl
