#pragma once

#include <stdexcept>
#include <string>

namespace nst {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand shapes are incompatible (vector length vs. matrix dimension, ...).
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A bad scalar/flag argument (non-finite entry, sparsity out of range, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// AA* is numerically rank deficient (Cholesky pivot below threshold).
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

/// A column submatrix has a numerically singular Gram matrix.
class SingularSubmatrixError : public Error {
 public:
  using Error::Error;
};

/// An operation that requires a Parseval frame (AA* = I) got something else.
class NotParsevalError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive support enumeration would exceed the configured cap.
class CombinatorialBlowupError : public Error {
 public:
  using Error::Error;
};

/// A theorem-certified bound was requested but its hypothesis fails.
class ConditionNotMetError : public Error {
 public:
  using Error::Error;
};

/// File or stream I/O failed (missing file, bad magic, short read, ...).
class IoError : public Error {
 public:
  using Error::Error;
};

/// A configuration file or CLI argument set cannot be interpreted.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nst
