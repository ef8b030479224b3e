#pragma once

#include <stdexcept>
#include <string>

namespace tbp {

enum class Errc {
  Overflow,
  DegenerateInput,
  NotUnimodular,
  DuplicatePoints,
  RuleMismatch,
  CoreNotContained,
  DomainTooLarge,
  InconsistentPins,
  SeedNotFree,
  BadParameter,
  NotCoprime,
  PointInSet,
  HorizonTooSmall,
  DensityOutOfRange,
  WindowTooLarge,
  ParseError,
};

inline const char* to_string(Errc e) {
  switch (e) {
    case Errc::Overflow: return "Overflow";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::RuleMismatch: return "RuleMismatch";
    case Errc::CoreNotContained: return "CoreNotContained";
    case Errc::DomainTooLarge: return "DomainTooLarge";
    case Errc::InconsistentPins: return "InconsistentPins";
    case Errc::SeedNotFree: return "SeedNotFree";
    case Errc::BadParameter: return "BadParameter";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::PointInSet: return "PointInSet";
    case Errc::HorizonTooSmall: return "HorizonTooSmall";
    case Errc::DensityOutOfRange: return "DensityOutOfRange";
    case Errc::WindowTooLarge: return "WindowTooLarge";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tbp
