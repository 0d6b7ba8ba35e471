#ifndef QOPDIST_ERRORS_H
#define QOPDIST_ERRORS_H

#include <stdexcept>
#include <string>

namespace qopdist {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition (shape, symmetry, positivity, sums).
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// An iterative numerical routine failed to converge.
class NumericalError : public Error {
   public:
    using Error::Error;
};

/// Two inputs that must differ are equal (e.g. rho == sigma).
class DegenerateInputError : public Error {
   public:
    using Error::Error;
};

/// The branch probability of an operation is too small to normalize its output.
class ZeroProbabilityError : public Error {
   public:
    using Error::Error;
};

/// The T operator of an operation lacks the unit or the zero eigenvalue.
class NotMaximizingShapeError : public Error {
   public:
    using Error::Error;
};

}  // namespace qopdist

#endif
