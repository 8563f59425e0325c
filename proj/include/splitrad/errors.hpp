#pragma once

#include <stdexcept>
#include <string>

namespace splitrad {

/// Raised when an operation's precondition is violated (zero argument,
/// non-prime modulus, degree too small, and so on).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when neither the escape certificate nor the boundedness
/// certificate fires within the configured caps.
class Undetermined : public std::runtime_error {
public:
    explicit Undetermined(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error in a polynomial expression; `column` is 1-based.
class ParseError : public DomainError {
public:
    ParseError(std::size_t column, const std::string& what)
        : DomainError("parse error at column " + std::to_string(column) + ": " + what),
          column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

}  // namespace splitrad
