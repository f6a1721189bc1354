#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace flatfront {

using Complex = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the set where a formula is defined (z = 0, |z| outside the
/// closed annulus, parameters out of range).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation landed on a zero of a denominator. `where` is the offending point.
class PoleError : public Error {
public:
  PoleError(const std::string& what, Complex where) : Error(what), where_(where) {}
  Complex where() const { return where_; }

private:
  Complex where_;
};

/// A bracketing root search found no sign change.
class BracketError : public Error {
public:
  BracketError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

private:
  double lo_, hi_;
};

/// Input data is degenerate (coincident points, g = g*, non-Riemannian metric).
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// The square root defining g is not single valued on the annulus.
class RepresentationError : public Error {
public:
  using Error::Error;
};

/// A file could not be read or does not hold the expected document.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace flatfront
