#pragma once

#include <stdexcept>
#include <string>

namespace nexp {

// Bad input: out-of-range parameters, unparseable expressions, points outside
// the domain interval. The CLI maps this to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computed result broke an invariant that should hold by construction.
// The CLI maps this to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nexp
