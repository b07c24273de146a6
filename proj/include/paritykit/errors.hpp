#pragma once

#include <stdexcept>
#include <string>

namespace paritykit {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller supplied an argument outside the operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A computation hit a configured limit (prime ceiling, time budget, range).
class ComputationLimit : public Error {
public:
    using Error::Error;
};

// A hypothesis the analysis depends on does not hold (e.g. not supersingular).
class GateFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace paritykit
