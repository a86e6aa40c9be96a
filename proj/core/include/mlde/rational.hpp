#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mlde {

/// Arbitrary-precision integer (GMP-backed).
using BigInt = mpz_class;

/// Arbitrary-precision rational, always canonical: reduced and with positive denominator.
///
/// All arithmetic is exact. Division by zero throws std::domain_error instead of
/// invoking GMP's abort.
class BigRat {
public:
    BigRat() : v_(0) {}
    BigRat(int n) : v_(static_cast<long>(n)) {}
    BigRat(long n) : v_(n) {}
    BigRat(long num, long den);
    BigRat(const BigInt& n) : v_(n) {}
    BigRat(const BigInt& num, const BigInt& den);

    /// Parses "p", "-p", or "p/q" in base 10; throws std::invalid_argument on malformed input.
    static BigRat from_string(std::string_view s);

    const BigInt& num() const { return v_.get_num(); }
    const BigInt& den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    /// -1, 0, or +1.
    int sign() const { return sgn(v_); }

    BigRat operator-() const;
    BigRat& operator+=(const BigRat& o);
    BigRat& operator-=(const BigRat& o);
    BigRat& operator*=(const BigRat& o);
    BigRat& operator/=(const BigRat& o);

    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

    friend bool operator==(const BigRat& a, const BigRat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigRat& a, const BigRat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const BigRat& a, const BigRat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const BigRat& a, const BigRat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const BigRat& a, const BigRat& b) { return a.v_ >= b.v_; }

    BigRat abs() const { return sign() < 0 ? -*this : *this; }
    BigRat inverse() const;
    /// Exact integer power; negative exponents invert (throws std::domain_error on 0).
    BigRat pow(long e) const;

    /// "p" when the denominator is 1, else "p/q".
    std::string to_string() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const BigRat& r);

private:
    mpq_class v_;  // invariant: canonical (mpq_canonicalize'd)
};

/// gcd of two integers, nonnegative.
BigInt int_gcd(const BigInt& a, const BigInt& b);

/// Generalized binomial coefficient: top*(top-1)*...*(top-k+1) / k!. Zero for k < 0.
BigRat binomial(const BigRat& top, long k);

/// k! as an exact rational.
BigRat factorial(long k);

}  // namespace mlde
