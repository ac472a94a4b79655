#pragma once

#include <stdexcept>
#include <string>

namespace mzk {

// Invalid parameters or incompatible inputs; maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematically invalid input data (singular symbol, broken symmetry).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File access or format failure; maps to CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite state during time stepping; maps to CLI exit code 2.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double last_finite_time, const std::string& what)
      : std::runtime_error(what), last_finite_time_(last_finite_time) {}
  double last_finite_time() const noexcept { return last_finite_time_; }

 private:
  double last_finite_time_;
};

}  // namespace mzk
