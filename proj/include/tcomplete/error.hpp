#pragma once

#include <stdexcept>
#include <string>

namespace tcomplete {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A spectral tensor is not the transform of a real tensor.
class SymmetryViolation : public Error {
public:
    using Error::Error;
};

/// An SVD failed to converge or produced non-finite values.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class EmptyMask : public Error {
public:
    using Error::Error;
};

class RankTooLarge : public Error {
public:
    using Error::Error;
};

class ZeroTruth : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

/// A configuration value is out of its documented range.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace tcomplete
