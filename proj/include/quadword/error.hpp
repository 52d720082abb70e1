#ifndef QUADWORD_ERROR_HPP_
#define QUADWORD_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace quadword {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A request would exceed a configured size limit (prefix cap, stage cap).
  class ResourceLimitError : public Error {
   public:
    using Error::Error;
  };

  // An index or position lies outside the valid range of an operation.
  class RangeError : public Error {
   public:
    using Error::Error;
  };

  // A finite computation cannot certify the requested answer: a position
  // beyond a slope's agreement horizon, a factor length beyond n_trust,
  // or a prefix too short for the requested analysis.
  class HorizonError : public Error {
   public:
    using Error::Error;
  };

  // A search over a finite scan window found nothing.
  class SearchHorizonError : public HorizonError {
   public:
    using HorizonError::HorizonError;
  };

  // Input that violates a type invariant (bad alphabet, bad slope, ...).
  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

}  // namespace quadword

#endif  // QUADWORD_ERROR_HPP_
