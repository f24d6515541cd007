#pragma once

#include <stdexcept>
#include <string>

namespace acmine {

// Error categories map to CLI exit codes: ConfigError -> 2, DataError -> 3,
// EmptyResultError -> 4. Anything else is an internal failure (1).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct EmptyResultError : Error {
    using Error::Error;
};

}  // namespace acmine
