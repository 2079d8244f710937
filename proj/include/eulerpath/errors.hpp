#pragma once

#include <stdexcept>
#include <string>

namespace eulerpath {

enum class ErrorKind {
  LoopEdge,
  DuplicateEdge,
  VertexOutOfRange,
  Unreachable,
  NotEulerian,
  NotConnected,
  DecompositionMismatch,
  NoOutEdge,
  ResampleBudgetExhausted,
  PreconditionViolated,
  NonpositiveD,
  LambdaOutOfRange,
  DensityTooLow,
  NotDFull,
  EmptyB,
  DeadEnd,
  TargetUnreachable,
  InvalidPath,
  MissingChord,
  TooManyFakeEdges,
  NoFeasibleDetour,
  BalanceViolated,
  TooLarge,
  BadParams,
  ConfigError,
  InvalidFormat,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eulerpath
