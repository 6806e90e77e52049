#pragma once

#include <stdexcept>
#include <string>

namespace mlca {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: mismatched dimensions or characteristics, non-prime moduli,
// divisibility preconditions and the like.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A counting routine was asked about an automaton (or a pair of maps) with
// infinitely many fixed or coincidence points.
class NotConfinedError : public Error {
 public:
  using Error::Error;
};

// A computed quantity contradicts an identity that must hold exactly.
// Always indicates a bug, never bad input.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// A bounded randomized search gave up.
class SearchExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlca
