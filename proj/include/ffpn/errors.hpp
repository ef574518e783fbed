#pragma once

#include <stdexcept>
#include <string>

namespace ffpn {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateContour : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

class InvalidDescriptor : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateClustering : public Error {
public:
    using Error::Error;
};

class DegeneratePair : public Error {
public:
    using Error::Error;
};

class EmptyRegion : public Error {
public:
    using Error::Error;
};

class Undefined : public Error {
public:
    using Error::Error;
};

class EmptyGroundTruth : public Error {
public:
    using Error::Error;
};

class EmptyProposals : public Error {
public:
    using Error::Error;
};

class PairingError : public Error {
public:
    using Error::Error;
};

class GenerationFailure : public Error {
public:
    using Error::Error;
};

/// File-level problems: unreadable streams, malformed records. Carries a
/// human-readable location ("file:line") in the message.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ffpn
