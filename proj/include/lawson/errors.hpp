// Exception hierarchy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace lawson {

class LawsonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LAWSON_DEFINE_ERROR(Name)                                  \
  class Name : public LawsonError {                                \
   public:                                                         \
    explicit Name(const std::string& what) : LawsonError(what) {}  \
  }

// disc arithmetic
LAWSON_DEFINE_ERROR(DivisorContainsZero);
LAWSON_DEFINE_ERROR(BranchCutViolation);
LAWSON_DEFINE_ERROR(DomainError);
LAWSON_DEFINE_ERROR(PrecisionLoss);

// Laurent polynomials
LAWSON_DEFINE_ERROR(PoleAtZero);
LAWSON_DEFINE_ERROR(NegativeDegreeInput);

// iterated integrals and zeta values
LAWSON_DEFINE_ERROR(AlphaOutOfRange);
LAWSON_DEFINE_ERROR(PoleOnPath);
LAWSON_DEFINE_ERROR(NonIntegrableEndpoint);
LAWSON_DEFINE_ERROR(DivergentIndex);
LAWSON_DEFINE_ERROR(UnknownIndex);
LAWSON_DEFINE_ERROR(InvalidWord);

// series and estimates
LAWSON_DEFINE_ERROR(MissingLowerOrder);
LAWSON_DEFINE_ERROR(SOutsideRadius);
LAWSON_DEFINE_ERROR(CKTooLarge);
LAWSON_DEFINE_ERROR(NoFeasiblePoint);

// spherical geometry
LAWSON_DEFINE_ERROR(AntipodalOrEqual);
LAWSON_DEFINE_ERROR(DegenerateTriangle);

#undef LAWSON_DEFINE_ERROR

}  // namespace lawson
