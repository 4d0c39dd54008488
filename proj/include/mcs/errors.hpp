#pragma once

#include <stdexcept>
#include <string>

namespace mcs {

/// Raised when caller-supplied data or configuration violates a precondition.
class invalid_input : public std::invalid_argument {
  public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation fails at runtime (non-finite values, failed solves).
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mcs
