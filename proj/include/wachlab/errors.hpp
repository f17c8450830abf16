#pragma once

#include <stdexcept>
#include <string>

namespace wachlab {

// Domain errors that callers are expected to catch and dispatch on.
// Programmer errors (mixed scalar orders, malformed input strings, ...)
// throw std::invalid_argument / std::logic_error instead.
enum class ErrorKind {
  NonMonomialInverse,    // inverse requested for a non-unit scalar
  ZeroValuation,         // p-adic valuation of the zero scalar
  ParamValuation,        // valuation undefined while free parameters remain
  SingularBaseChange,    // base-change matrix has no monomial-unit determinant
  NonMonomialFrobenius,  // operation needs monomial Frobenius entries
  NotDiagonal,           // operation needs a diagonal Frobenius
  NonNormalized,         // character extraction from a non-normalized module
  EvenDegree,            // closed form only available for odd residue degree
  TooLarge,              // exact enumeration would exceed the safety bound
  MissingGammaData,      // semilinear data lacks the required gamma action
  TruncationTooShallow,  // series truncation too short to decide the question
  CapExceeded,           // sweep size beyond the user-supplied cap
  UnsupportedShape,      // input shape outside the implemented families
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonMonomialInverse: return "NonMonomialInverse";
    case ErrorKind::ZeroValuation: return "ZeroValuation";
    case ErrorKind::ParamValuation: return "ParamValuation";
    case ErrorKind::SingularBaseChange: return "SingularBaseChange";
    case ErrorKind::NonMonomialFrobenius: return "NonMonomialFrobenius";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::NonNormalized: return "NonNormalized";
    case ErrorKind::EvenDegree: return "EvenDegree";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::MissingGammaData: return "MissingGammaData";
    case ErrorKind::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wachlab
