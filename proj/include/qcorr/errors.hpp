#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix shape does not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented numerical precondition (e.g. not Hermitian).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Matrix is not a valid density matrix: negative eigenvalue, wrong trace.
class NotAStateError : public Error {
 public:
  using Error::Error;
};

// Probability list is not a distribution.
class DistributionError : public Error {
 public:
  using Error::Error;
};

// Scalar parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Observables passed as a complementary pair are not mutually unbiased.
class ComplementarityError : public Error {
 public:
  using Error::Error;
};

// Argument of a closed-form expression left the domain of P[.].
class FormulaDomainError : public Error {
 public:
  using Error::Error;
};

// Two independent evolution routes disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Scenario configuration cannot be turned into a run.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcorr
