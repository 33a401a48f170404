#pragma once

#include <stdexcept>
#include <string>

namespace pomapf {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InstanceInfeasible : public Error {
public:
    using Error::Error;
};

class ObserverInactive : public Error {
public:
    using Error::Error;
};

class MalformedActionSet : public Error {
public:
    using Error::Error;
};

class GoalBlocked : public Error {
public:
    using Error::Error;
};

// Raised when a planner is queried against a belief it has not been synchronized with.
class StalePlanner : public Error {
public:
    using Error::Error;
};

// A delta contradicts a cell that is already known. Cannot happen in a static world.
class ConflictingEvidence : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// An executed joint move violated the vertex/edge collision constraints.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace pomapf
