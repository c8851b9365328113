#pragma once

#include <stdexcept>
#include <string>

namespace evsym {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed source text; carries a 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          detail_(message), line_(line), column_(column) {}

    const std::string& detail() const { return detail_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string detail_;
    int line_;
    int column_;
};

/// Input outside an operation's domain or a violated precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured size cap would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Two independent constructions disagreed, or a proven bound failed.
/// Always indicates a defect, never a user error.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace evsym
