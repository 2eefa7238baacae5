#pragma once

#include <stdexcept>
#include <string>

namespace invpde {

// Every failure raised by the library derives from Error, so callers that only
// care about "domain vs. programming error" can catch the base.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define INVPDE_DECLARE_ERROR(Name)                    \
  class Name : public Error {                         \
   public:                                            \
    explicit Name(const std::string& what)            \
        : Error(std::string(#Name ": ") + what) {}    \
  }

INVPDE_DECLARE_ERROR(DimensionMismatch);
INVPDE_DECLARE_ERROR(OrderUnderflow);
INVPDE_DECLARE_ERROR(SingularJacobian);
INVPDE_DECLARE_ERROR(DivisionBySingular);
INVPDE_DECLARE_ERROR(DegreeMismatch);
INVPDE_DECLARE_ERROR(ChartDomain);
INVPDE_DECLARE_ERROR(ChartMismatch);
INVPDE_DECLARE_ERROR(NotGraph);
INVPDE_DECLARE_ERROR(DegenerateHessian);
INVPDE_DECLARE_ERROR(WrongDimension);
INVPDE_DECLARE_ERROR(SingularMetric);
INVPDE_DECLARE_ERROR(InvalidElement);
INVPDE_DECLARE_ERROR(InvalidExpr);
INVPDE_DECLARE_ERROR(NotPolynomial);
INVPDE_DECLARE_ERROR(DivisionByZero);
INVPDE_DECLARE_ERROR(SchemaError);

#undef INVPDE_DECLARE_ERROR

}  // namespace invpde
