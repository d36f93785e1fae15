#pragma once

#include <stdexcept>
#include <string>

namespace rumkit {

/// Base class for all rumkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid framework data, indices, or arguments.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed framework file or scalar literal.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Failure to read or write an external file.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace rumkit
