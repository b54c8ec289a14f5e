#ifndef FAIRDIV_ERRORS_HPP
#define FAIRDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairdiv {

/// Base class for all fairdiv errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad vector shapes, out-of-range parameters, unknown ids.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The demands do not exceed the estate; the model is undefined there.
class NotBankruptcyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An enumeration bound (subsets, permutations) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A fairness index is undefined for the given rate vector (all zero).
class UndefinedIndexError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace fairdiv

#endif  // FAIRDIV_ERRORS_HPP
