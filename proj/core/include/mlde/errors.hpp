#pragma once

#include <stdexcept>
#include <string>

namespace mlde {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Linear system has identically zero determinant.
class SingularMatrix : public Error {
public:
    explicit SingularMatrix(const std::string& what = "singular matrix") : Error(what) {}
};

/// Minimal-model parameters share a common factor.
class NotCoprime : public Error {
public:
    explicit NotCoprime(const std::string& what = "parameters not coprime") : Error(what) {}
};

/// Leading operator coefficient is identically zero; no Frobenius analysis possible.
class Degenerate : public Error {
public:
    explicit Degenerate(const std::string& what = "degenerate operator: g_0 = 0") : Error(what) {}
};

/// Symbolic Frobenius recurrence hit an identically zero leading factor.
class ResonantSymbolic : public Error {
public:
    explicit ResonantSymbolic(const std::string& what) : Error(what) {}
};

/// Specialized Frobenius recurrence hit 0 = nonzero at a resonant step.
class ResonantObstruction : public Error {
public:
    explicit ResonantObstruction(const std::string& what) : Error(what) {}
};

/// The two independent constraints on p_l cannot be solved (degenerate linear relation).
class Inconsistent : public Error {
public:
    explicit Inconsistent(const std::string& what) : Error(what) {}
};

}  // namespace mlde
