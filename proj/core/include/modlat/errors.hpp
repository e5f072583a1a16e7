#pragma once

#include <stdexcept>
#include <string>

namespace modlat {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MODLAT_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    explicit Name(const std::string& what) \
        : Error(#Name ": " + what) {}      \
  };

MODLAT_DEFINE_ERROR(ParseError)
MODLAT_DEFINE_ERROR(QueryBeyondTruncation)
MODLAT_DEFINE_ERROR(NotInvertible)
MODLAT_DEFINE_ERROR(NotPositiveDefinite)
MODLAT_DEFINE_ERROR(RankDeficient)
MODLAT_DEFINE_ERROR(BoundTooLarge)
MODLAT_DEFINE_ERROR(UnknownLattice)
MODLAT_DEFINE_ERROR(NotIntegral)
MODLAT_DEFINE_ERROR(UnsupportedLevel)
MODLAT_DEFINE_ERROR(EmptyBasis)
MODLAT_DEFINE_ERROR(InsufficientData)
MODLAT_DEFINE_ERROR(SingularSystem)
MODLAT_DEFINE_ERROR(InconsistentSurplus)
MODLAT_DEFINE_ERROR(EnumerationTooLarge)
MODLAT_DEFINE_ERROR(TailBoundNotMet)

#undef MODLAT_DEFINE_ERROR

}  // namespace modlat
