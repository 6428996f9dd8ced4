#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqcm {

/// Caller supplied something out of contract (bad index, size mismatch, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numeric precondition failed, e.g. measuring a state that is not normalized.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Execution could not continue, e.g. a forced measurement outcome is impossible.
class ExecutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed circuit text. Carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace hqcm
