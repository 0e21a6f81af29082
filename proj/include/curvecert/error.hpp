#pragma once

#include <stdexcept>
#include <string>

namespace curvecert {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Division by an integer whose prime factors leave the localized set,
// or by zero, or by a multiple of the field characteristic.
struct IllegalDivisorError : Error {
    explicit IllegalDivisorError(const std::string& msg) : Error(msg) {}
};

// Operands belong to different coefficient domains or extension parameters.
struct MismatchError : Error {
    explicit MismatchError(const std::string& msg) : Error(msg) {}
};

// A pipeline assertion failed (zero element, impure coordinate, ...).
struct CheckError : Error {
    explicit CheckError(const std::string& msg) : Error(msg) {}
};

// Requested case does not match the parity of (q-1)/2.
struct ParityError : Error {
    explicit ParityError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

} // namespace curvecert
