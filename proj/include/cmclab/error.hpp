#pragma once

#include <stdexcept>
#include <string>

namespace cmclab {

// Computational failure (non-convergence, degenerate geometry, violated
// hypotheses).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameters (k = 1, H = 0, malformed files, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmclab
