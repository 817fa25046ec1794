#pragma once

#include <stdexcept>
#include <string>

namespace alttrace {

/// A computed value contradicts an invariant that the mathematics guarantees
/// (non-rational trace, identity mismatch, ...). Carries the counterexample.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace alttrace
