#pragma once

#include <stdexcept>
#include <string>

namespace zenodyn {

// Invalid user-supplied parameters or config files.  The CLI maps this
// (and std::invalid_argument from constructor validation) to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to converge or was asked to run outside its
// stability region.  CLI exit code 3.
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem trouble: unreadable config, unwritable output directory.
// CLI exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace zenodyn
