#pragma once

#include <stdexcept>
#include <string>

namespace qgc {

/// Base class for every error raised by the library.  The `kind()` string is
/// the stable machine-readable name used in CLI fail reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QGC_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

QGC_DEFINE_ERROR(DivisionByZero)
QGC_DEFINE_ERROR(PoleAtPoint)
QGC_DEFINE_ERROR(RankMismatch)
QGC_DEFINE_ERROR(IndexOutOfRange)
QGC_DEFINE_ERROR(NotDominant)
QGC_DEFINE_ERROR(NotInLattice)
QGC_DEFINE_ERROR(NonIntegralSecondArgument)
QGC_DEFINE_ERROR(NotInPositiveCone)
QGC_DEFINE_ERROR(WrongSide)
QGC_DEFINE_ERROR(SingularGram)
QGC_DEFINE_ERROR(TruncationOverflow)
QGC_DEFINE_ERROR(NotInUb0)
QGC_DEFINE_ERROR(NotInRootLattice)
QGC_DEFINE_ERROR(CentralityCheckFailed)
QGC_DEFINE_ERROR(NoSolution)
QGC_DEFINE_ERROR(NonUniqueSolution)
QGC_DEFINE_ERROR(UsageError)

#undef QGC_DEFINE_ERROR

}  // namespace qgc
