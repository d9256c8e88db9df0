#pragma once

#include <stdexcept>

namespace zeno {

// Bad arguments: out-of-range digits, mismatched sizes, malformed files.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Valid on its own, but a combination the model does not define (bias with qudits, n too large).
struct UnsupportedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A protocol ran and could not continue, e.g. the allowed subspace became empty.
struct ProtocolFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zeno
