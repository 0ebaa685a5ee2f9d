#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fnq {

enum class ErrorCode {
  InvalidSpec,
  NonPrimeModulus,
  ReducibleModulus,
  AxiomViolation,
  BudgetExceeded,
  NotAField,
  SyntaxError,
  ArityError,
  UnboundName,
  LiteralInNonUnitalRing,
  ArgumentOutsideDomain,
  NotReducible,
  NotCentral,
  EpsilonZero,
  ResidualNonzero,
  BothZero,
  UnsupportedArgument,
  UnsupportedGenerator,
  Usage,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code is what callers (and the CLI's JSON error output) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }
  // 1-based source position for SyntaxError.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace fnq
