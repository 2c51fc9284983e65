#pragma once
#include <stdexcept>
#include <string>

namespace quadratrix {

// Single error type for the whole engine. The kind distinguishes user-facing
// failure classes (bad input, geometric degeneracy, selector trouble) from
// internal defects (precision cap exhausted, broken invariants).
class Error : public std::runtime_error {
public:
    enum class Kind {
        Parse,                // syntax / reference / arity problems in DSL text
        UnknownName,
        DuplicateName,
        DivisionByZero,
        NegativeRadicand,
        NegativeLength,
        DegenerateObject,     // coincident defining points, zero radius, ...
        InfiniteIntersection, // intersect called on identical objects
        AmbiguousSelector,
        NoCandidate,          // selector matched nothing / empty intersection where a point was required
        Usage,                // CLI-level misuse
        Defect,               // internal invariant broken; should never happen on valid input
    };

    Error(Kind kind, std::string message)
        : std::runtime_error("error: " + message), kind_(kind), message_(std::move(message)) {}

    Kind kind() const { return kind_; }
    const std::string& message() const { return message_; }

private:
    Kind kind_;
    std::string message_;
};

} // namespace quadratrix
