#pragma once

#include <stdexcept>
#include <string>

namespace mto {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched vector/matrix sizes, bad task indices, shape violations.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Invalid experiment configuration, incompatible algorithm/problem pairing,
// metric requested on data it does not apply to.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Variation/selection operator preconditions violated.
class OperatorError : public Error {
public:
    using Error::Error;
};

// Unknown algorithm, problem, metric or parameter name.
class RegistryError : public Error {
public:
    using Error::Error;
};

// Incompatible archives passed to merge/split.
class MergeError : public Error {
public:
    using Error::Error;
};

// Archive file with a missing or unsupported schema version.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Corrupt or truncated archive payload.
class IntegrityError : public Error {
public:
    using Error::Error;
};

// Export requested on data that cannot supply it.
class ExportError : public Error {
public:
    using Error::Error;
};

// Malformed configuration text.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace mto
