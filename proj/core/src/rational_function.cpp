#include "mlde/rational_function.hpp"

#include <ostream>
#include <stdexcept>

namespace mlde {

RatFunc::RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    reduce();
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = UniPoly(BigRat(1));
        return;
    }
    if (den_.degree() > 0) {
        const UniPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
    }
    const BigRat lead = den_.leading();
    if (!lead.is_one()) {
        const BigRat inv = lead.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

BigRat RatFunc::to_rational() const {
    if (!is_constant()) throw std::domain_error("RatFunc: not a constant");
    if (num_.is_zero()) return BigRat(0);
    return num_.coeff(0) / den_.coeff(0);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    // Cross-reduce before multiplying to keep degrees low.
    const UniPoly g1 = poly_gcd(num_, o.den_);
    const UniPoly g2 = poly_gcd(o.num_, den_);
    const UniPoly n1 = g1.degree() > 0 ? num_.divide_exact(g1) : num_;
    const UniPoly d2 = g1.degree() > 0 ? o.den_.divide_exact(g1) : o.den_;
    const UniPoly n2 = g2.degree() > 0 ? o.num_.divide_exact(g2) : o.num_;
    const UniPoly d1 = g2.degree() > 0 ? den_.divide_exact(g2) : den_;
    RatFunc r;
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    const BigRat lead = r.den_.leading();
    if (!lead.is_one()) {
        const BigRat inv = lead.inverse();
        r.num_ = r.num_.scaled(inv);
        r.den_ = r.den_.scaled(inv);
    }
    return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    const BigRat lead = r.den_.leading();
    if (!lead.is_one()) {
        const BigRat inv = lead.inverse();
        r.num_ = r.num_.scaled(inv);
        r.den_ = r.den_.scaled(inv);
    }
    return r;
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc acc(BigRat(1));
    RatFunc base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        if (e > 1) base *= base;
    }
    return acc;
}

BigRat RatFunc::eval(const BigRat& x) const {
    const BigRat d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("RatFunc: evaluation at a pole");
    return num_.eval(x) / d;
}

std::string RatFunc::to_string(const std::string& var) const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

}  // namespace mlde
