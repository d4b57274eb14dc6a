#pragma once

#include <stdexcept>
#include <string>

namespace swarmgrid {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// Grid spacing outside [dis_s, sen_r].
class SpacingViolation : public Error {
public:
    using Error::Error;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

class IllegalMove : public Error {
public:
    using Error::Error;
};

/// Lock released by a drone that does not hold it.
class NotHolder : public Error {
public:
    using Error::Error;
};

/// Raised by the engine when a committed tick breaks a safety invariant.
class EngineInvariantViolation : public Error {
public:
    using Error::Error;
};

class PlanFailure : public Error {
public:
    using Error::Error;
};

class PlacementFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace swarmgrid
