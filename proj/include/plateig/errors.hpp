#pragma once

#include <stdexcept>
#include <string>

namespace plateig {

/// Argument outside the mathematical domain of a function (x < 0, nu < 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A special function was asked for an order it does not implement.
class UnsupportedOrder : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// lambda < -alpha^2/4: the split alpha_+/alpha_- is complex.
class DiscriminantError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested (alpha, lambda) is outside the regime a fundamental solution supports.
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotAnEigenvalue : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegeneratePair : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BranchJump : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientSpectrum : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Self-intersecting boundary, source inside the domain, point outside, ...
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateEigenvalue : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bracketing search found no sign change of its indicator.
class NoSignChange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace plateig
