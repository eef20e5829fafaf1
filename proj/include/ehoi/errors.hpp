#pragma once

#include <stdexcept>
#include <string>

namespace ehoi {

/// Input document is not well-formed (not parseable at all).
struct SyntaxError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Document parses but does not conform to the annotation schema
/// (missing/extra field, wrong type, bad enum value, duplicate ids).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A hand references an active object instance that does not exist.
struct ReferentialError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejection sampling could not place the requested objects.
struct PlacementFailure : std::runtime_error {
    PlacementFailure(const std::string& what, std::uint64_t iteration)
        : std::runtime_error(what), iteration(iteration) {}
    std::uint64_t iteration;
};

/// Camera pose or intrinsics unusable for rendering.
struct DegenerateCamera : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidFactor : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RasterTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncompatibleCategorySets : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ehoi
