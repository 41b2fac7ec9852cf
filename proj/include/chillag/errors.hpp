#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chillag {

enum class ErrorKind {
  CapExceeded,
  InvalidPermutation,
  NotSubgroup,
  NotCommutative,
  NotAssociative,
  DegenerateSpectrum,
  NoPerronColumn,
  RelationViolated,
  NonPositiveU,
  ActionViolated,
  SplitFailed,
  LiftOutOfRange,
  NonIntegralConstant,
  NotPiSeparable,
  BasisSizeMismatch,
  SingularSolve,
  NonIntegralDecomposition,
  VanishingViolated,
  RegularIdentityViolated,
  ConstituentMissing,
  ParseError,
  ShapeMismatch,
  MismatchBeyondTolerance,
  UnknownGroup,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::InvalidPermutation: return "InvalidPermutation";
  case ErrorKind::NotSubgroup: return "NotSubgroup";
  case ErrorKind::NotCommutative: return "NotCommutative";
  case ErrorKind::NotAssociative: return "NotAssociative";
  case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
  case ErrorKind::NoPerronColumn: return "NoPerronColumn";
  case ErrorKind::RelationViolated: return "RelationViolated";
  case ErrorKind::NonPositiveU: return "NonPositiveU";
  case ErrorKind::ActionViolated: return "ActionViolated";
  case ErrorKind::SplitFailed: return "SplitFailed";
  case ErrorKind::LiftOutOfRange: return "LiftOutOfRange";
  case ErrorKind::NonIntegralConstant: return "NonIntegralConstant";
  case ErrorKind::NotPiSeparable: return "NotPiSeparable";
  case ErrorKind::BasisSizeMismatch: return "BasisSizeMismatch";
  case ErrorKind::SingularSolve: return "SingularSolve";
  case ErrorKind::NonIntegralDecomposition: return "NonIntegralDecomposition";
  case ErrorKind::VanishingViolated: return "VanishingViolated";
  case ErrorKind::RegularIdentityViolated: return "RegularIdentityViolated";
  case ErrorKind::ConstituentMissing: return "ConstituentMissing";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::ShapeMismatch: return "ShapeMismatch";
  case ErrorKind::MismatchBeyondTolerance: return "MismatchBeyondTolerance";
  case ErrorKind::UnknownGroup: return "UnknownGroup";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace chillag
