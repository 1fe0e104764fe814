#pragma once

#include <stdexcept>
#include <string>

namespace cgiter {

// Raised when a request exceeds a built-in size guard (enumeration bound,
// certified-search dimension).  The CLI maps this to exit code 3.
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed user input (files, flags).  CLI exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cgiter
