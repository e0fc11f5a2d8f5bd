#pragma once

#include <stdexcept>
#include <string>

namespace pech {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration or parameter value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed snapshot or other on-disk artifact.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Fields on different grids, or with a vertical basis the operation cannot use.
class IncompatibleOperands : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data violates an operation precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared during time integration.
class BlowUpError : public Error {
 public:
  BlowUpError(double time, const std::string& what) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace pech
