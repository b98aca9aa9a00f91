#pragma once

#include <stdexcept>
#include <string>

namespace hardwall {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a function.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// An iterative method (series, continued fraction, quadrature, root finder)
/// exhausted its iteration or panel budget.
class NonConvergence : public Error
{
public:
    using Error::Error;
};

/// Model parameters violate 0 < r1 < r2 < b^{-1/(2b)}, b > 0, alpha > -1 or n >= 1.
class InvalidParams : public Error
{
public:
    using Error::Error;
};

/// A Szego-type series was requested outside its annulus of convergence.
class DivergentSeries : public Error
{
public:
    using Error::Error;
};

/// theta1 == theta2 (mod 2 pi) where distinct boundary angles are required.
class DegenerateAngles : public Error
{
public:
    using Error::Error;
};

/// An index fell into none of the h_j regime windows.
class RegimeUnknown : public Error
{
public:
    using Error::Error;
};

} // namespace hardwall
