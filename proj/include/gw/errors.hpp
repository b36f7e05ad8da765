#pragma once

#include <stdexcept>
#include <string>

namespace gw {

// Numerical-failure taxonomy. Configuration mistakes throw std::invalid_argument
// instead; the CLI maps gw::Error to exit code 2 and config errors to 1.
enum class ErrorCode {
  DegenerateScaling,    // an operation required tau > 0 (or a nonzero scale)
  UnsortedFamily,       // a parameter family was not strictly ordered
  SonicDefectExceeded,  // left the strict hyperbolicity region (R* or D <= 0)
  VacuumReached,        // density fell to the vacuum floor / chart left its image
  NoConvergence,        // an iteration failed to reach tolerance
  RangeExceeded,        // a requested wave strength is outside the curve's range
  InconsistentRH,       // jump data violate the Rankine-Hugoniot relations
  CFLViolation,         // a wave fan escapes its mesh diamond
  OutOfDomain,          // evaluation point outside the wedge domain
  DomainMismatch,       // two solutions are not comparable (different b0/extent)
  UnsupportedTau,       // diagnostic defined only at tau = 0
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace gw
