#pragma once

#include <stdexcept>
#include <string>

namespace cantube {

/// Malformed input: bad vertex, bad index, unparsable text, wrong sizes.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request whose mathematical precondition does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cantube
