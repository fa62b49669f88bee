#pragma once

#include <stdexcept>
#include <string>

namespace cliffordlab {

// Raised when an algebra element or matrix has no inverse. Kept apart from
// plain "not a member" answers, which are reported as empty optionals.
class NonInvertible : public std::domain_error {
 public:
  explicit NonInvertible(const std::string& what) : std::domain_error(what) {}
};

// Raised for nerve data that violates its own structural invariants.
class MalformedNerve : public std::invalid_argument {
 public:
  explicit MalformedNerve(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cliffordlab
