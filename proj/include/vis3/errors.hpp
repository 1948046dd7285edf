#pragma once

#include <stdexcept>
#include <string>

namespace vis3 {

enum class ErrorKind {
  Parse,
  SingularInput,
  RankDeficient,
  BadConfiguration,
  NonScalarCommutator,
  ReconstructionFailed,
  AmbiguousReconstruction,
  WrongCount,
  DegeneratePencil,
  DegenerateJ,
  DegenerateIntersection,
  NoRationalPoint,
  NoJMatch,
  IsogenousPair,
  NoLinearEquivalence,
  NullSpaceDimension,
  VerificationFailed,
  InternalError,
  InsufficientPrecision,
  NonConvergence,
  Inconclusive,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::BadConfiguration: return "BadConfiguration";
    case ErrorKind::NonScalarCommutator: return "NonScalarCommutator";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::AmbiguousReconstruction: return "AmbiguousReconstruction";
    case ErrorKind::WrongCount: return "WrongCount";
    case ErrorKind::DegeneratePencil: return "DegeneratePencil";
    case ErrorKind::DegenerateJ: return "DegenerateJ";
    case ErrorKind::DegenerateIntersection: return "DegenerateIntersection";
    case ErrorKind::NoRationalPoint: return "NoRationalPoint";
    case ErrorKind::NoJMatch: return "NoJMatch";
    case ErrorKind::IsogenousPair: return "IsogenousPair";
    case ErrorKind::NoLinearEquivalence: return "NoLinearEquivalence";
    case ErrorKind::NullSpaceDimension: return "NullSpaceDimension";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable class; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(ErrorKind::Parse, msg) {}
};

/// A mathematical precondition or postcondition failed.
class MathError : public Error {
 public:
  MathError(ErrorKind kind, const std::string& msg) : Error(kind, msg) {}
};

/// The working precision was not enough to certify a numeric step;
/// callers may retry at higher precision.
class PrecisionError : public Error {
 public:
  PrecisionError(ErrorKind kind, const std::string& msg) : Error(kind, msg) {}
};

}  // namespace vis3
