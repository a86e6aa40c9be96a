#include "mlde/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace mlde {

BigRat::BigRat(long num, long den) {
    if (den == 0) throw std::domain_error("BigRat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

BigRat::BigRat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("BigRat: zero denominator");
    v_ = mpq_class(num) / mpq_class(den);
}

BigRat BigRat::from_string(std::string_view s) {
    mpq_class v;
    if (s.empty() || mpq_set_str(v.get_mpq_t(), std::string(s).c_str(), 10) != 0)
        throw std::invalid_argument("BigRat: cannot parse '" + std::string(s) + "'");
    if (v.get_den() == 0) throw std::invalid_argument("BigRat: zero denominator in '" + std::string(s) + "'");
    v.canonicalize();
    BigRat r;
    r.v_ = v;
    return r;
}

BigRat BigRat::operator-() const {
    BigRat r;
    r.v_ = -v_;
    return r;
}

BigRat& BigRat::operator+=(const BigRat& o) {
    v_ += o.v_;
    return *this;
}

BigRat& BigRat::operator-=(const BigRat& o) {
    v_ -= o.v_;
    return *this;
}

BigRat& BigRat::operator*=(const BigRat& o) {
    v_ *= o.v_;
    return *this;
}

BigRat& BigRat::operator/=(const BigRat& o) {
    if (o.is_zero()) throw std::domain_error("BigRat: division by zero");
    v_ /= o.v_;
    return *this;
}

BigRat BigRat::inverse() const {
    if (is_zero()) throw std::domain_error("BigRat: inverse of zero");
    BigRat r;
    r.v_ = 1 / v_;
    return r;
}

BigRat BigRat::pow(long e) const {
    if (e == 0) return BigRat(1);
    if (is_zero()) {
        if (e < 0) throw std::domain_error("BigRat: negative power of zero");
        return BigRat(0);
    }
    const BigRat base = e < 0 ? inverse() : *this;
    const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), k);
    BigRat r;
    r.v_ = mpq_class(n) / mpq_class(d);
    return r;
}

std::ostream& operator<<(std::ostream& os, const BigRat& r) { return os << r.v_; }

BigInt int_gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigRat binomial(const BigRat& top, long k) {
    if (k < 0) return BigRat(0);
    BigRat acc(1);
    for (long i = 0; i < k; ++i) acc *= (top - BigRat(i)) / BigRat(i + 1);
    return acc;
}

BigRat factorial(long k) {
    BigRat acc(1);
    for (long i = 2; i <= k; ++i) acc *= BigRat(i);
    return acc;
}

}  // namespace mlde
