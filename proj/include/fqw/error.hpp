#pragma once

#include <stdexcept>
#include <string>

namespace fqw {

// Bad caller input: malformed permutations, signatures, descriptors, files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Group closure grew past the configured order cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A formula that must produce an integer did not (odd numerator, non-integral genus).
class ParityViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A derived quantity contradicts an identity the construction guarantees.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fqw
