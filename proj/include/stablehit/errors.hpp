#pragma once

#include <stdexcept>
#include <string>

namespace stablehit {

// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Quadrature ran out of panel budget before meeting its tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

// Successive Gaver-Stehfest orders disagree.
class NumericInstability : public Error {
public:
    using Error::Error;
};

class BracketError : public Error {
public:
    using Error::Error;
};

// Two algebraically equivalent evaluation routes disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class TableBuildError : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class UnknownSuite : public Error {
public:
    using Error::Error;
};

}  // namespace stablehit
