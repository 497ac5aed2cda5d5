#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dnt {

enum class Errc {
  DuplicateLabel,
  EmptyFrame,
  FrameTooLarge,
  UnknownLabel,
  InvalidMask,
  FrameMismatch,
  InvalidRelation,
  NonDisjointPair,
  DuplicatePair,
  AxiomViolation,
  EmptySetMass,
  MassOutOfRange,
  TotalExceedsOne,
  DuplicateFocalSet,
  IncompleteDNumber,
  NotABpa,
  TotalConflict,
  FewerThanTwoInputs,
  ComplexityBudget,
  ParameterOutOfRange,
  DegenerateDenominator,
  SingularMatrix,
  SpecInfeasible,
  PreconditionFailed,
  InternalInvariant,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dnt
