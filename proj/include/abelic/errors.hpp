#pragma once
#include <stdexcept>
#include <string>

namespace abelic {

// Every failure mode maps to exactly one machine-readable code; the CLI
// serializes {code, message} to stderr and exits 1 (2 for malformed input).
enum class ErrorCode {
  NotSquarefree,
  BadConductor,
  OrderMismatch,
  NonEuclideanOrder,
  SingularMatrix,
  SizeMismatch,
  BadDimension,
  BadDimensions,
  ZeroStabOrder,
  ModulusIncompatible,
  BadMultiplicity,
  BadIndexRange,
  NotSaturated,
  SearchBudgetExceeded,
  MinorVanished,
  InconsistentSplit,
  CapExceeded,
  EmptySet,
  EmptyFactorList,
  PrecisionTooLow,
  NonPositiveEta,
  MalformedInput,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace abelic
