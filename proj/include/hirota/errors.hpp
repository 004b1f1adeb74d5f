#pragma once

#include <stdexcept>
#include <string>

namespace hirota {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched ring sizes, out-of-range variable indices, non-square matrices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid WebSpec or transform data: k + l + 1 != n, repeated nodes, degenerate Moebius data.
class SpecError : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  using Error::Error;
};

/// Q(0) vanishes or the interpolation system is singular at the given data.
class DegenerateInterpolantError : public Error {
 public:
  using Error::Error;
};

class EvaluationPoleError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DegenerateRestrictionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hirota
