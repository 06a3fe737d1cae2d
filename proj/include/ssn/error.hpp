#pragma once

#include <stdexcept>
#include <string>

namespace ssn {

enum class ErrorKind {
  Precondition,
  Parse,
  RepeatedRoots,
  Reducible,
  Unsupported,
  DegenerateInput,
  IncompatibleFields,
  SizeCap,
  SeparationExhausted,
  SscViolated,
  OrbitUndecidable,
  NotDiffeomorphism,
  EmptyWindow,
  ReducibleChain,
  NotPisot,
  MismatchedBinning,
  PrecisionExhausted,
};

const char* to_string(ErrorKind kind);

// All library failures surface as ssn::Error; kind() lets callers branch
// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::RepeatedRoots: return "repeated roots";
    case ErrorKind::Reducible: return "reducible polynomial";
    case ErrorKind::Unsupported: return "unsupported input";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::IncompatibleFields: return "incompatible number fields";
    case ErrorKind::SizeCap: return "size cap exceeded";
    case ErrorKind::SeparationExhausted: return "separation search exhausted";
    case ErrorKind::SscViolated: return "SSC violated";
    case ErrorKind::OrbitUndecidable: return "orbit undecidable";
    case ErrorKind::NotDiffeomorphism: return "not a diffeomorphism";
    case ErrorKind::EmptyWindow: return "empty window";
    case ErrorKind::ReducibleChain: return "reducible chain";
    case ErrorKind::NotPisot: return "base is not Pisot";
    case ErrorKind::MismatchedBinning: return "mismatched binning";
    case ErrorKind::PrecisionExhausted: return "precision exhausted";
  }
  return "error";
}

}  // namespace ssn
