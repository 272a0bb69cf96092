#pragma once

#include <stdexcept>
#include <string>

namespace qacurve {

enum class ErrorCode {
  InvalidArgument = 1,
  DomainError,     // value outside a variable's domain, wrong model kind
  CapExceeded,     // enumeration size over the configured cap
  Infeasible,      // request is well formed but cannot be satisfied
  DegenerateFit,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure in the library surfaces as this exception; the C API maps
// the code onto qac_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qacurve
