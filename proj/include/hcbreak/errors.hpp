#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcbreak {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition (count == 0, c0 == 0, n0 <= 500, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t expected, std::size_t actual)
      : Error("length mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class LengthTooShort : public Error {
 public:
  LengthTooShort(std::size_t minimum, std::size_t actual)
      : Error("sequence too short: need at least " + std::to_string(minimum) +
              " elements, got " + std::to_string(actual)) {}
};

// Malformed image, raw file or key record.
class FormatError : public Error {
 public:
  using Error::Error;
};

// The chaotic trajectory left the bounded region. step is the 1-based RK4
// step counted from the initial condition (discarded steps included).
class DivergenceError : public Error {
 public:
  explicit DivergenceError(std::size_t step)
      : Error("chaotic trajectory diverged at RK4 step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace hcbreak
