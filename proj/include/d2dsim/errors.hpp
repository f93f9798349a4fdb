#pragma once

#include <stdexcept>
#include <string>

namespace d2dsim {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFoundError : SimError {
    using SimError::SimError;
};

// Parent links no longer form a forest (cycle or dangling parent).
struct TopologyCorruptionError : SimError {
    using SimError::SimError;
};

struct DegenerateGeometryError : SimError {
    using SimError::SimError;
};

struct EmptyPathError : SimError {
    using SimError::SimError;
};

// The topology moved on since the decision's snapshot; caller re-runs selection.
struct StaleDecisionError : SimError {
    using SimError::SimError;
};

struct SequencingError : SimError {
    using SimError::SimError;
};

struct ConfigurationError : SimError {
    using SimError::SimError;
};

struct EmptyScenarioError : SimError {
    using SimError::SimError;
};

struct ParseError : SimError {
    using SimError::SimError;
};

struct VersionError : SimError {
    using SimError::SimError;
};

struct ValidationError : SimError {
    using SimError::SimError;
};

}  // namespace d2dsim
