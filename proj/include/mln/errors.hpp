#pragma once

#include <stdexcept>
#include <string>

namespace mln {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mode index outside [0, d).
class ModeIndexError : public Error {
 public:
  using Error::Error;
};

// Shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Requested rank or oversampling is infeasible for the input shape.
class RankError : public Error {
 public:
  using Error::Error;
};

// Malformed sketch description.
class SketchSpecError : public Error {
 public:
  using Error::Error;
};

// Triangular factor is numerically singular.
class SingularTriangularError : public Error {
 public:
  using Error::Error;
};

// Diagnostics need a dense complement basis that would be too large.
class DiagnosticsScaleError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable tensor/Tucker file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace mln
