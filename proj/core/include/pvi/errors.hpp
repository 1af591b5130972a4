#pragma once

#include <stdexcept>
#include <string>

namespace pvi {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error { using Error::Error; };
struct IncompatibleExtensions : Error { using Error::Error; };
struct UnsupportedExtension : Error { using Error::Error; };
struct ZeroSeries : Error { using Error::Error; };
struct UnknownOrder : Error { using Error::Error; };
// Reading a coefficient past the known order of a series.
struct UnknownCoefficient : Error { using Error::Error; };
struct InsufficientTerms : Error { using Error::Error; };
struct NonIntegerGrade : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };
struct TruncationResidualNonzero : Error { using Error::Error; };
struct InsufficientKnownOrder : Error { using Error::Error; };
struct ResonantHead : Error { using Error::Error; };
struct InconsistentTruncation : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct NotASingularPoint : Error { using Error::Error; };
struct NotFuchsian : Error { using Error::Error; };
struct HigherLogUnsupported : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace pvi
