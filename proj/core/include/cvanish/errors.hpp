#pragma once

#include <stdexcept>
#include <string>

namespace cvanish {

/// Invalid caller-supplied parameter (family/rank pair, p out of range, zero direction...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Inconsistent data: missing multiplicity orbit, failed dimension or Ricci identity.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Unknown space label.
class LookupError : public std::runtime_error {
 public:
  explicit LookupError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown inside the matrix oracle (singular Killing form, no simple-root match).
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cvanish
