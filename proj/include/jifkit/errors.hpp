#pragma once

#include <stdexcept>
#include <string>

namespace jifkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input data: validation failures, inconsistent groups, undefined
// statistics. Maps to exit code 3 in the CLI.
struct DataError : Error {
    using Error::Error;
};

// Filesystem failures. Messages always carry the offending path. Maps to
// exit code 4 in the CLI.
struct IoError : Error {
    using Error::Error;
};

}  // namespace jifkit
