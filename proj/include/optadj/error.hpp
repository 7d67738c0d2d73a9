#pragma once

#include <stdexcept>
#include <string>

namespace optadj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown labels, self-loops, bad separator queries.
class GraphError : public Error {
public:
    using Error::Error;
};

/// A causal problem instance that violates its invariants.
class ProblemError : public Error {
public:
    using Error::Error;
};

/// Malformed problem document. The message carries the line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : Error(what), line_(0) {}

    /// 0 when the error is not tied to a single line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Flow-stage failures: overflow, no finite cut, inconsistent flow.
class FlowError : public Error {
public:
    using Error::Error;
};

/// Desk-scale oracle refused an instance above its cap.
class OracleLimitError : public Error {
public:
    using Error::Error;
};

}  // namespace optadj
