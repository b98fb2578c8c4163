#pragma once

#include <stdexcept>
#include <string>

namespace vir {

// Raised when a computation that must be exact and polynomial is not; these
// indicate internal inconsistency (missing fixed point, wrong weights, ...).
class InternalInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotDivisible : public InternalInconsistency {
public:
    using InternalInconsistency::InternalInconsistency;
};

class NonIntegral : public InternalInconsistency {
public:
    using InternalInconsistency::InternalInconsistency;
};

class TrivialWeight : public InternalInconsistency {
public:
    using InternalInconsistency::InternalInconsistency;
};

class InvalidFamily : public InternalInconsistency {
public:
    using InternalInconsistency::InternalInconsistency;
};

// Raised for invalid user input or unsupported case parameters.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedRankSurface : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class NoRoom : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NegativeDegreeInput : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace vir
