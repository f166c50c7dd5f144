#pragma once

#include <stdexcept>
#include <string>

namespace logsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A field carries NaN/Inf, or a grid/field pair is malformed.
class InvalidField : public Error {
public:
    using Error::Error;
};

/// Two operands live on different grids.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Parameters outside the admissible range (p <= 4, eps >= 1, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// The fibering map of a zero (or degenerate) field has no interior maximum.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

} // namespace logsp
