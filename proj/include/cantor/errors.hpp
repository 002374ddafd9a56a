#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

/// Malformed input: inadmissible words, mismatched spaces, bad descriptors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configurable search or iteration bound was exhausted before an answer.
class ResourceCap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cantor
