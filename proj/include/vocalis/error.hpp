#pragma once

#include <stdexcept>
#include <string>

namespace vocalis {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad flags, malformed manifests, invalid scheme or parameter values.
// The CLI maps these to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Missing or unusable input data: absent files, documents shorter than a
// page, degenerate samples. The CLI maps these to exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

} // namespace vocalis
