#pragma once

#include <stdexcept>
#include <string>

namespace voxelaug {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed an invalid argument (bad code, bad range, wrong mode).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Input data is unreadable or inconsistent. Subclasses narrow the cause.
class DataError : public Error {
public:
    using Error::Error;
};

class ParseError : public DataError {
public:
    using DataError::DataError;
};

class UnsupportedFormatError : public DataError {
public:
    using DataError::DataError;
};

class DimensionalityError : public DataError {
public:
    using DataError::DataError;
};

class WriteError : public DataError {
public:
    using DataError::DataError;
};

class ShapeError : public DataError {
public:
    using DataError::DataError;
};

class SizeError : public DataError {
public:
    using DataError::DataError;
};

class ConfigError : public DataError {
public:
    using DataError::DataError;
};

class DegenerateDataError : public DataError {
public:
    using DataError::DataError;
};

class UnmappedLabelError : public DataError {
public:
    UnmappedLabelError(int label, const std::string& what)
        : DataError(what), label_(label) {}

    [[nodiscard]] int label() const noexcept { return label_; }

private:
    int label_;
};

/// An internal invariant was violated (NaN in output, label leak, ...).
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace voxelaug
