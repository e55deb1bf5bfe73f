#pragma once

#include <stdexcept>
#include <string>

namespace qorth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition on user-supplied parameters.
class ValidationError : public Error {
public:
    using Error::Error;
};

class NonFiniteTerm : public Error {
public:
    using Error::Error;
};

class ZeroPoint : public Error {
public:
    using Error::Error;
};

class PoleInDenominator : public Error {
public:
    using Error::Error;
};

/// A series failed the truncation rule within the term budget.
class SeriesDiverged : public Error {
public:
    using Error::Error;
};

class NotSemiclassical : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DegenerateK1 : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// k2 = 0: classical weight, the ladder system cannot be solved for a_n^2.
class DegenerateK2 : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class DivisionNearZero : public Error {
public:
    DivisionNearZero(const std::string& what, int index) : Error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

class SingularStep : public Error {
public:
    SingularStep(const std::string& what, int index) : Error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

}  // namespace qorth
