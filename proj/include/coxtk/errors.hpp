// errors.hpp - error taxonomy shared across the toolkit
#ifndef COXTK_ERRORS_HPP
#define COXTK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coxtk {

// Caller handed us out-of-range or otherwise invalid data.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A text input (graph file, matrix file, density expression) failed to parse.
struct FormatError : std::runtime_error {
    FormatError(std::string msg, int line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_number(line) {}
    int line_number;
};

// An enumeration guard was exceeded (complexity protection, not a bug).
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint file does not match the requested run.
struct CheckpointMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certificate that must hold by construction failed to verify.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace coxtk

#endif
