#pragma once

#include <stdexcept>
#include <string>

namespace obstrukt {

/// Malformed or out-of-contract input. Maps to CLI exit code 2.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// A retry budget for general position was exhausted. Maps to exit code 3.
class DegenerateInput : public std::runtime_error {
public:
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

/// The input is well formed but outside the hypotheses of the computation.
class HypothesisViolation : public InvalidInput {
public:
    explicit HypothesisViolation(const std::string& what) : InvalidInput(what) {}
};

/// An internal consistency check failed; always a bug.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

#define OBSTRUKT_CHECK(cond, msg)                                                  \
    do {                                                                           \
        if (!(cond)) throw ::obstrukt::InternalError(std::string("check failed: ") \
                                                     + #cond + ": " + (msg));      \
    } while (false)

} // namespace obstrukt
