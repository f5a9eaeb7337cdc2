#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments: dimension or degree mismatches, violated preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A result the library computed contradicts a theorem it relies on.
/// Seeing one means a bug, never bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

/// A corpus or representation file could not be read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed structure-equation, form, corpus or representation text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(where(line, column) + message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string where(std::size_t line, std::size_t column) {
        return std::to_string(line) + ":" + std::to_string(column) + ": ";
    }

    std::size_t line_;
    std::size_t column_;
};

} // namespace lcs
