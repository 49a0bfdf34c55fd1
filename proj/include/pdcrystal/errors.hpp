#pragma once

#include <stdexcept>
#include <string>

namespace pdcrystal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inversion of an element whose constant term vanishes.
struct NonUnitError : Error {
    using Error::Error;
};

// Binary operation on series/elements with different truncation data.
struct TruncationMismatch : Error {
    using Error::Error;
};

// Malformed input file or value string.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace pdcrystal
