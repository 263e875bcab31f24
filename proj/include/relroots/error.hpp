#pragma once

#include <stdexcept>
#include <string>

namespace relroots
{

// Each error class maps to one CLI exit code.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

/// Malformed or out-of-contract input (bad JSON, loops, disconnected graphs).
class InputError : public Error
{
  public:
    using Error::Error;
};

/// An enumeration or recursion size guard was exceeded.
class GuardError : public Error
{
  public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// A certificate could not determine every sign over its parameter box.
class IndeterminateError : public Error
{
  public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// Root iteration failed to converge, or an exact identity that should hold did not.
class NumericalError : public Error
{
  public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

} // namespace relroots
