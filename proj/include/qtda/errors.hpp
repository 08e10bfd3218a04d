#pragma once

#include <stdexcept>
#include <string>

namespace qtda {

/// Exit-code class of a failure. The CLI maps these to 1/2/3.
enum class ErrorKind { Input = 1, Invariant = 2, Resource = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed or out-of-domain user input (files, parameters).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// A structural or certified-bound invariant does not hold.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorKind::Invariant, what) {}
};

/// Caller broke an API precondition (e.g. undeclared parity).
class ContractError : public InvariantError {
 public:
  explicit ContractError(const std::string& what) : InvariantError(what) {}
};

/// Floating-point computation could not reach the required accuracy.
class NumericalError : public InvariantError {
 public:
  explicit NumericalError(const std::string& what) : InvariantError(what) {}
};

/// A size or degree cap was exceeded.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::Resource, what) {}
};

}  // namespace qtda
