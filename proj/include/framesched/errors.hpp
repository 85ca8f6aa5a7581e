#pragma once

#include <stdexcept>
#include <string>

namespace framesched {

/// A decision referenced an empty job, an out-of-range app, or scheduled
/// two jobs sharing a worker.
struct MalformedDecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix/vector dimensions disagree with the model's (N, M).
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A set-packing instance violates its format (empty set, element out of range).
struct InvalidInstance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A 2-D region sweep was asked for on a model with N != 2.
struct NotTwoApps : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Config document failed to parse or validate.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace framesched
