#include "mlde/polynomial.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mlde {

namespace {
const BigRat kZero(0);
}

UniPoly::UniPoly(const BigRat& constant) {
    if (!constant.is_zero()) c_.push_back(constant);
}

UniPoly UniPoly::from_coeffs(std::vector<BigRat> coeffs) {
    UniPoly p;
    p.c_ = std::move(coeffs);
    p.strip();
    return p;
}

UniPoly UniPoly::monomial(const BigRat& coeff, int deg) {
    UniPoly p;
    if (!coeff.is_zero()) {
        p.c_.assign(static_cast<size_t>(deg) + 1, BigRat(0));
        p.c_.back() = coeff;
    }
    return p;
}

void UniPoly::strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const BigRat& UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(i)];
}

const BigRat& UniPoly::leading() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return from_coeffs(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return from_coeffs(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<BigRat> r(c_.size() + o.c_.size() - 1, BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return from_coeffs(std::move(r));
}

UniPoly UniPoly::scaled(const BigRat& s) const {
    if (s.is_zero()) return UniPoly();
    UniPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

BigRat UniPoly::eval(const BigRat& x) const {
    BigRat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<BigRat> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigRat(static_cast<long>(i));
    return from_coeffs(std::move(r));
}

UniPoly UniPoly::pow(int e) const {
    if (e < 0) throw std::domain_error("UniPoly::pow: negative exponent");
    UniPoly acc(BigRat(1));
    UniPoly base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        if (e > 1) base *= base;
    }
    return acc;
}

UniPoly UniPoly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    if (k < 0) throw std::domain_error("UniPoly::shifted: negative shift");
    std::vector<BigRat> r(c_.size() + static_cast<size_t>(k), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i + static_cast<size_t>(k)] = c_[i];
    return from_coeffs(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("UniPoly::divmod: division by zero polynomial");
    UniPoly r = *this;
    if (degree() < d.degree()) return {UniPoly(), r};
    std::vector<BigRat> q(static_cast<size_t>(degree() - d.degree()) + 1, BigRat(0));
    const BigRat lead_inv = d.leading().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        const int k = r.degree() - d.degree();
        const BigRat f = r.leading() * lead_inv;
        q[static_cast<size_t>(k)] = f;
        r -= d.shifted(k).scaled(f);
    }
    return {from_coeffs(std::move(q)), r};
}

UniPoly UniPoly::divide_exact(const UniPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("UniPoly::divide_exact: nonzero remainder");
    return q;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inverse());
}

BigRat UniPoly::content() const {
    if (is_zero()) return BigRat(0);
    BigInt num_gcd(0), den_lcm(1);
    for (const auto& x : c_) {
        if (x.is_zero()) continue;
        num_gcd = int_gcd(num_gcd, x.num());
        BigInt g = int_gcd(den_lcm, x.den());
        den_lcm = den_lcm / g * x.den();
    }
    return BigRat(num_gcd, den_lcm);
}

UniPoly UniPoly::primitive_part() const {
    if (is_zero()) return *this;
    UniPoly p = scaled(content().inverse());
    if (p.leading().sign() < 0) p = -p;
    return p;
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigRat& a = coeff(i);
        if (a.is_zero()) continue;
        if (!first) os << (a.sign() > 0 ? " + " : " - ");
        else if (a.sign() < 0) os << "-";
        first = false;
        const BigRat mag = a.abs();
        if (i == 0 || !mag.is_one()) os << mag.to_string();
        if (i > 0) {
            if (!mag.is_one()) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.to_string(); }

namespace {

// Fraction-free remainder: lc(b)^(deg a - deg b + 1) * a mod b, integer inputs stay integer.
UniPoly pseudo_remainder(UniPoly a, const UniPoly& b) {
    const int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        a = a.scaled(b.leading()) - b.shifted(shift).scaled(a.leading());
    }
    return a;
}

}  // namespace

UniPoly poly_gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) return UniPoly();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    // Primitive PRS: pseudo-remainders with content stripped each step keep
    // coefficient growth polynomial where plain Euclid over Q explodes.
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        UniPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.is_zero() ? UniPoly() : r.primitive_part();
    }
    return a.monic();
}

}  // namespace mlde
