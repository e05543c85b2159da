#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrgrid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments, out-of-range parameters, mismatched fields.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured resource cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + " (needs " + std::to_string(required) + ", cap " + std::to_string(cap) + ")"),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// A code that was required to be MR is not.
class NotMaximallyRecoverable : public Error {
 public:
  using Error::Error;
};

/// A linear system has no solution.
class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace mrgrid
