#pragma once

#include <stdexcept>
#include <string>

namespace bhlearn {

/// Input outside an operation's domain (dimension mismatch, out-of-range level, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a representational limit (dense-table cap, integer width, float range).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A quantity that is mathematically undefined for the given input (e.g. ratio over a zero function).
class UndefinedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace detail

}  // namespace bhlearn
