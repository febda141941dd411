#ifndef COHFT_ERRORS_HPP
#define COHFT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cohft {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COHFT_DECLARE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

COHFT_DECLARE_ERROR(DimensionMismatch)
COHFT_DECLARE_ERROR(NotInvertible)
COHFT_DECLARE_ERROR(NotSemisimple)
COHFT_DECLARE_ERROR(NotSplit)
COHFT_DECLARE_ERROR(UnstablePair)
COHFT_DECLARE_ERROR(OrderMismatch)
COHFT_DECLARE_ERROR(ConstantTermSingular)
COHFT_DECLARE_ERROR(NotDivisible)
COHFT_DECLARE_ERROR(NonzeroConstantTerm)
COHFT_DECLARE_ERROR(WrongConstantTerm)
COHFT_DECLARE_ERROR(UnsupportedLowPower)
COHFT_DECLARE_ERROR(NodalTermPresent)
COHFT_DECLARE_ERROR(DistinctSupports)

#undef COHFT_DECLARE_ERROR

// Carries every violated invariant, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> report)
      : Error(report.empty() ? std::string("validation failed") : report.front()),
        report_(std::move(report)) {}
  const std::vector<std::string>& report() const { return report_; }

 private:
  std::vector<std::string> report_;
};

}  // namespace cohft

#endif
