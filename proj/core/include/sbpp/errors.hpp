#pragma once

#include <stdexcept>
#include <string>

namespace sbpp {

// Invalid or inconsistent configuration (bad parameters, unknown keys).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input to an operation (length mismatch, duplicate period...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called in the wrong state, e.g. issuing bills mid-window.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system failure; the message carries the path and the OS error.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sbpp
