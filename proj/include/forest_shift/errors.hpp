#pragma once

#include <stdexcept>
#include <string>

namespace fshift {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural problems detected while building a forest.
class ForestError : public Error {
public:
    using Error::Error;
};

class CycleError : public ForestError {
public:
    using ForestError::ForestError;
};

class DanglingParent : public ForestError {
public:
    using ForestError::ForestError;
};

class BadAttach : public ForestError {
public:
    using ForestError::ForestError;
};

class UnknownVertex : public Error {
public:
    using Error::Error;
};

class LabelClash : public Error {
public:
    using Error::Error;
};

class RaysUnsupported : public Error {
public:
    using Error::Error;
};

class VertexSetMismatch : public Error {
public:
    using Error::Error;
};

class MaskHitsRoot : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// Weight-system validation failures.
class WeightError : public Error {
public:
    using Error::Error;
};

class NonzeroRootWeight : public WeightError {
public:
    using WeightError::WeightError;
};

class MissingWeight : public WeightError {
public:
    using WeightError::WeightError;
};

class WindowEmpty : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class SupportForkless : public Error {
public:
    using Error::Error;
};

class SearchFailed : public Error {
public:
    using Error::Error;
};

/// Malformed input documents (JSON shape, number syntax).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace fshift
