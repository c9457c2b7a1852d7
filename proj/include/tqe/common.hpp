#ifndef TQE_COMMON_HPP
#define TQE_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tqe {

/// Discrete time point. The time domain is abstract integer ticks.
using Tick = std::int64_t;

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Contract violations (tag mismatch, malformed input, unknown names).
class ContractError : public Error {
public:
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

/// Arithmetic overflow in checked integer operations.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

/// A time point outside the configured time domain.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

} // namespace tqe

#endif
