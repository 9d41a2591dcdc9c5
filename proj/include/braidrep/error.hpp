#ifndef BRAIDREP_ERROR_HPP
#define BRAIDREP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braidrep {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
  using Error::Error;
};

class DegreeMismatch : public Error {
public:
  DegreeMismatch(std::size_t lhs, std::size_t rhs)
    : Error("degree mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs))
  {}
};

/// An operation was called outside its domain (wrong shape, violated
/// structural hypothesis, non-invariant set, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A search or enumeration would exceed its configured resource limit.
class LimitExceeded : public Error {
public:
  using Error::Error;
};

/// A t-table violates the braid compatibility congruence at strand pair
/// (i, i+1) and residue j.
class ConditionTError : public Error {
public:
  ConditionTError(std::size_t i, std::size_t j)
    : Error("condition t fails at i=" + std::to_string(i) + ", j=" + std::to_string(j)),
      i_(i), j_(j)
  {}

  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

private:
  std::size_t i_;
  std::size_t j_;
};

} // namespace braidrep

#endif
