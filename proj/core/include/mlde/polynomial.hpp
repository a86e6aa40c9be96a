#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mlde/rational.hpp"

namespace mlde {

/// Dense univariate polynomial over BigRat in one indeterminate (canonically "c").
///
/// Invariant: the coefficient vector carries no trailing zeros; the zero polynomial
/// is the empty vector and has degree() == -1.
class UniPoly {
public:
    UniPoly() = default;
    /// Constant polynomial.
    UniPoly(const BigRat& constant);
    UniPoly(int constant) : UniPoly(BigRat(constant)) {}
    /// coeffs[i] is the coefficient of x^i; trailing zeros are stripped.
    static UniPoly from_coeffs(std::vector<BigRat> coeffs);
    /// The monomial coeff * x^deg.
    static UniPoly monomial(const BigRat& coeff, int deg);
    /// The indeterminate x.
    static UniPoly variable() { return monomial(BigRat(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// Coefficient of x^i (zero outside the stored range).
    const BigRat& coeff(int i) const;
    const std::vector<BigRat>& coeffs() const { return c_; }
    const BigRat& leading() const;

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    UniPoly scaled(const BigRat& s) const;

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return c_ != o.c_; }

    BigRat eval(const BigRat& x) const;
    UniPoly derivative() const;
    UniPoly pow(int e) const;
    /// Multiplies by x^k.
    UniPoly shifted(int k) const;

    /// Euclidean division: *this = q * d + r with deg r < deg d. Throws std::domain_error on d = 0.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    /// Division known to be exact; throws std::domain_error if a remainder appears.
    UniPoly divide_exact(const UniPoly& d) const;

    /// Leading coefficient made 1 (zero polynomial stays zero).
    UniPoly monic() const;
    /// Rational content: the positive rational g with (*this)/g integral and primitive. Zero for 0.
    BigRat content() const;
    /// this / content(), with sign normalized so the leading coefficient is positive.
    UniPoly primitive_part() const;

    /// Human-readable form, e.g. "5c^2 + 22c - 1".
    std::string to_string(const std::string& var = "c") const;
    friend std::ostream& operator<<(std::ostream& os, const UniPoly& p);

private:
    std::vector<BigRat> c_;
    void strip();
};

/// Monic greatest common divisor; poly_gcd(0, 0) = 0.
UniPoly poly_gcd(UniPoly a, UniPoly b);

/// All rational roots of p, with multiplicity, via the rational-root theorem applied to
/// the primitive integer form of p. Requires p nonzero. Sorted ascending.
std::vector<BigRat> rational_roots(const UniPoly& p);

}  // namespace mlde
