#pragma once

#include <stdexcept>
#include <string>

namespace spdiff {

/// Input violates an operation's precondition (mismatched candidate sets,
/// non-single-peaked profile where one is required, unknown voter, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but exceeds a documented size guard.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed text input (profile, network or trace files).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A runtime-checked invariant failed (e.g. a non-single-peaked opinion
/// appeared in a single-peaked run).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace spdiff
