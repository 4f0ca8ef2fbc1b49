#pragma once

#include <stdexcept>
#include <string>

namespace rosa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Domain preconditions (bad n, word not 2-almost-balanced, ...).
struct PreconditionFailed : Error {
    using Error::Error;
};

// Interval refinement hit the precision cap without separating two values.
// Signals an arithmetic bug rather than a tolerable tie.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// No Kenyon matching exists; carries the first violated property (K1..K4).
struct NoMatching : Error {
    explicit NoMatching(const std::string& property, const std::string& detail)
        : Error("no Kenyon matching: " + property + " violated (" + detail + ")"),
          property(property) {}
    std::string property;
};

// Two metatile placements disagree on a shared tile during gluing.
struct ConflictError : Error {
    using Error::Error;
};

// A constructed tiling failed its post-hoc validation.
struct ConsistencyError : Error {
    using Error::Error;
};

struct CornerConditionFailed : Error {
    using Error::Error;
};

struct LimitExceeded : Error {
    using Error::Error;
};

struct NotFound : Error {
    using Error::Error;
};

}  // namespace rosa
