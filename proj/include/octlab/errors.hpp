#ifndef OCTLAB_ERRORS_HPP
#define OCTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace octlab {

enum class ErrorCode {
  CharacteristicForbidden,
  NotPrime,
  FieldMismatch,
  NonScalarNorm,
  NotImaginary,
  DimensionMismatch,
  NonScalarValue,
  FormulaMismatch,
  DegenerateAlgebra,
  FlavorMismatch,
  PrimeDividesDenominator,
  DimensionDisagreement,
  VerificationFailed,
  NoUnit,
  NotProportional,
  BadInput,
  Io,
  ResourceBound,
};

const char* error_code_name(ErrorCode c);

/// Exception carrying a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace octlab

#endif
