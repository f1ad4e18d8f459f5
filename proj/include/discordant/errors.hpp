#pragma once

#include <stdexcept>
#include <string>

namespace discordant {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

// Raised when a constructed or parsed state violates positivity, trace or
// Hermiticity, or when family parameters are out of range.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InvalidMeasurement : public Error {
public:
    using Error::Error;
};

class PrimeRequired : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace discordant
