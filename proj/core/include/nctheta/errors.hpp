#ifndef NCTHETA_ERRORS_HPP
#define NCTHETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nctheta {

enum class ErrorKind {
  Dimension,          // mismatched or unsupported sizes
  Precondition,       // input fails a documented invariant
  Positivity,         // imaginary part not positive definite
  Singularity,        // matrix (numerically) not invertible
  Degeneracy,         // no usable coordinate chart found
  DomainMembership,   // input outside the required subgroup/domain
  Budget,             // symbolic degree budget exceeded
  Convergence,        // certified truncation radius exceeds the budget
  NearZeroDivisor,    // denominator too small to normalize safely
  Aliasing,           // quadrature grid too coarse
  Composition,        // middle algebra of a triple does not match
  UnsupportedGenerator,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Positivity: return "positivity";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Degeneracy: return "degeneracy";
    case ErrorKind::DomainMembership: return "domain";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Convergence: return "convergence-budget";
    case ErrorKind::NearZeroDivisor: return "near-zero-divisor";
    case ErrorKind::Aliasing: return "aliasing";
    case ErrorKind::Composition: return "composition";
    case ErrorKind::UnsupportedGenerator: return "unsupported-generator";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace nctheta

#endif
