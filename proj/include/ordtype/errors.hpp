#pragma once

#include <stdexcept>
#include <string>

namespace ordtype {

// The input lies outside the fragment where a verdict is guaranteed.
class Unsupported : public std::runtime_error {
public:
    explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

// A rewrite or realization produced a state that the theory rules out.
class InternalInvariantViolation : public std::logic_error {
public:
    explicit InternalInvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ordtype
