#pragma once

#include <stdexcept>
#include <string>

namespace kmgm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed values, broken invariants, inconsistent files.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A dataset or result document could not be parsed.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// The requested operation is not defined for the given kernel.
class UnsupportedKernelError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An explicit materialization was refused because the problem is too large.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// An eigensolver or other numerical routine failed.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace kmgm
