#pragma once

#include <stdexcept>
#include <string>

namespace jetvar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands were built over different bundles.
class BundleMismatch : public Error {
public:
  using Error::Error;
};

/// A base, fibre or multi-index direction lies outside the bundle.
class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its domain (wrong bidegree, not closed, ...).
class PreconditionViolation : public Error {
public:
  using Error::Error;
};

/// A result that must hold by construction did not; indicates a bug.
class InternalInconsistency : public Error {
public:
  using Error::Error;
};

} // namespace jetvar
