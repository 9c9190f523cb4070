#pragma once

#include <stdexcept>

namespace formtrack {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph construction.
struct SelfEdge final : Error {
    using Error::Error;
};
struct DuplicateEdge final : Error {
    using Error::Error;
};
struct InvalidBounds final : Error {
    using Error::Error;
};
struct DisconnectedGraph final : Error {
    using Error::Error;
};
struct UnknownAgent final : Error {
    using Error::Error;
};

// Barrier evaluation outside its open domain.
struct OutOfDomain final : Error {
    using Error::Error;
};

// Robustness metric is undefined without distance noise.
struct ZeroNoise final : Error {
    using Error::Error;
};

// Integration produced a non-finite coordinate.
struct NonFiniteState final : Error {
    using Error::Error;
};

// Scenario file handling.
struct ParseError final : Error {
    using Error::Error;
};
struct ValidationError final : Error {
    using Error::Error;
};
struct IoError final : Error {
    using Error::Error;
};

}  // namespace formtrack
