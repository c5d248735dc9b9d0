#pragma once

#include <stdexcept>
#include <string>

namespace irred {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix violated a structural invariant (non-square, empty, NaN/Inf).
class InvalidMatrix : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// sigma(A) and sigma(B) are too close for AX - XB = C to be uniquely solvable.
class SpectraOverlap : public Error {
public:
    using Error::Error;
};

/// The operator is not an element of the ambient algebra.
class NotInAlgebra : public Error {
public:
    using Error::Error;
};

/// Commutant has dimension >= 2 but no non-scalar Hermitian element was found.
class DegenerateCommutant : public Error {
public:
    using Error::Error;
};

class DegenerateGap : public Error {
public:
    using Error::Error;
};

/// The final irreducibility certificate of a perturbation did not hold.
class CertificateFailed : public Error {
public:
    using Error::Error;
};

/// Malformed JSON/config input.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace irred
