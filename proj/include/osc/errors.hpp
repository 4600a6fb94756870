#pragma once

#include <stdexcept>
#include <string>

namespace osc {

// Status values shared with the C API (see osc.h).
enum class ErrorCode : int {
  InvalidArgument = 1,
  Domain = 2,
  Quadrature = 3,
  Io = 4,
  Internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

// Evaluation outside the domain of a sampled function.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace osc
