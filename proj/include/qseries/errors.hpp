#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qseries {

// A mathematical precondition of an operation does not hold.
class PreconditionError : public std::domain_error {
public:
    explicit PreconditionError(const std::string &what) : std::domain_error(what) {}
};

// Requested coefficient lies outside the known (conclusive) range of a truncated series.
class TruncationError : public PreconditionError {
public:
    explicit TruncationError(const std::string &what) : PreconditionError(what) {}
};

class DivisionByZero : public std::domain_error {
public:
    explicit DivisionByZero(const std::string &what) : std::domain_error(what) {}
};

// Malformed text input; line and column are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : std::runtime_error(format(what, line, column)), message_(what), line_(line), column_(column) {}

    const std::string &message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string &what, std::size_t line, std::size_t column)
    {
        if (line == 0) return what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// Loaded data violates a named invariant.
class InvariantError : public std::runtime_error {
public:
    InvariantError(std::string invariant, const std::string &detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

    const std::string &invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace qseries
