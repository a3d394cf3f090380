#pragma once

#include <stdexcept>

namespace aft {

// A required switching witness does not exist: the path family is not an
// abstract network (or a temporal family fails the analogous check).
class SwitchingViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal structural guarantee failed (e.g. a canonical switch produced a
// witness that mixes prefix and suffix elements out of order).  Indicates a
// bug or an instance that breaks a theorem the code relies on.
class StructuralInconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No integral optimal dual exists within the search bound even though total
// dual integrality promises one.  Signals an invalid instance or a solver bug.
class TdiViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration grew past its configured size bound.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A random generator could not produce a well-formed instance within bounds.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON schema or value errors); the message names
// the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aft
