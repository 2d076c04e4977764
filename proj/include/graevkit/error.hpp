#pragma once

#include <stdexcept>
#include <string>

namespace graevkit {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad rational literal, ragged matrix, missing JSON field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input that is well formed but shaped wrong for the object it describes
// (matrix size differs from the point list, duplicate identifiers).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A precondition of a mathematical operation is violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace graevkit
