#pragma once

#include <iosfwd>
#include <string>

#include "mlde/polynomial.hpp"
#include "mlde/rational.hpp"

namespace mlde {

/// Univariate rational function over BigRat in the indeterminate "c".
///
/// Canonical form: gcd(num, den) = 1 and den monic. Equality of canonical forms is
/// structural equality.
class RatFunc {
public:
    RatFunc() : num_(), den_(BigRat(1)) {}
    RatFunc(int v) : RatFunc(BigRat(v)) {}
    RatFunc(const BigRat& v) : num_(v), den_(BigRat(1)) {}
    RatFunc(const UniPoly& p) : num_(p), den_(BigRat(1)) {}
    /// num/den, reduced. Throws std::domain_error on zero denominator.
    RatFunc(UniPoly num, UniPoly den);

    /// The indeterminate c.
    static RatFunc variable() { return RatFunc(UniPoly::variable()); }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Value as a rational; throws std::domain_error when not constant.
    BigRat to_rational() const;
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc pow(int e) const;

    /// Evaluation at a point; throws std::domain_error when the denominator vanishes there.
    BigRat eval(const BigRat& x) const;
    /// True when the denominator is nonzero at x.
    bool defined_at(const BigRat& x) const { return !den_.eval(x).is_zero(); }

    std::string to_string(const std::string& var = "c") const;
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f);

private:
    UniPoly num_;
    UniPoly den_;
    void reduce();
};

}  // namespace mlde
