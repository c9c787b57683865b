#pragma once

#include <stdexcept>

namespace shep {

/// Base class for all simulation errors.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point that must lie outside an obstacle was found strictly inside it.
struct InsideObstacle : SimError {
    using SimError::SimError;
};

/// A unit direction was requested for a zero-length vector.
struct DegenerateDirection : SimError {
    using SimError::SimError;
};

/// The grid planner could not reach the goal cell.
struct NoPath : SimError {
    using SimError::SimError;
};

/// A config file or override could not be parsed.
struct ParseError : SimError {
    using SimError::SimError;
};

/// Config parsed but violates documented bounds.
struct ValidationError : SimError {
    using SimError::SimError;
};

/// The simulation reached a physically inconsistent state it could not repair.
struct PhysicsViolation : SimError {
    using SimError::SimError;
};

} // namespace shep
