#pragma once

#include <stdexcept>
#include <string>

namespace adsnull {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error { using Error::Error; };
class NonConvergence : public Error { using Error::Error; };
class LimitUnstable : public Error { using Error::Error; };
class IntegratorFailure : public Error {
public:
  IntegratorFailure(const std::string& what, double s)
      : Error(what + " at s=" + std::to_string(s)), where(s) {}
  double where;
};
class SearchExhausted : public Error { using Error::Error; };
class NotATotalDivergence : public Error { using Error::Error; };
class InsufficientJet : public Error { using Error::Error; };
class OutOfRange : public Error { using Error::Error; };
class DegenerateBivector : public Error { using Error::Error; };
class GridTooCoarse : public Error { using Error::Error; };
class InvalidPair : public Error { using Error::Error; };
class NotPeriodicBending : public Error { using Error::Error; };
class KdVResidualTooLarge : public Error { using Error::Error; };
class NoSignChange : public Error { using Error::Error; };

}  // namespace adsnull
