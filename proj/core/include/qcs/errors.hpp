#pragma once

#include <stdexcept>
#include <string>

namespace qcs {

// Base of every error raised by the library. The CLI maps InvalidParameter
// to exit code 2; everything else is a numerical failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Series or product did not reach its tolerance within the term budget.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

// Integrand returned a non-finite (or negative) value.
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace qcs
