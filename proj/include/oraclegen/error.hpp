#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oraclegen {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (e.g. advancing a grammar
/// state with an illegal token).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class LexicalError : public Error {
public:
    LexicalError(const std::string& message, std::size_t offset)
        : Error(message), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t token_index)
        : Error(message), token_index_(token_index) {}

    std::size_t token_index() const noexcept { return token_index_; }

private:
    std::size_t token_index_;
};

/// Malformed input file; carries the file name and 1-based line.
class FormatError : public Error {
public:
    FormatError(const std::string& file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

} // namespace oraclegen
