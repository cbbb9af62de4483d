#pragma once

#include <stdexcept>
#include <string>

namespace involcode {

// Failure taxonomy shared by the library and the CLI.
// The kind drives the process exit code: parse -> 1, precondition -> 2,
// internal -> 3.
enum class ErrorKind { parse, precondition, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& message)
        : Error(ErrorKind::parse, message) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& message)
        : Error(ErrorKind::precondition, message) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& message)
        : Error(ErrorKind::internal, message) {}
};

} // namespace involcode
