#pragma once

#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlde/rational.hpp"
#include "mlde/rational_function.hpp"

namespace mlde {

namespace detail {
inline BigRat as_rational(const BigRat& v) { return v; }
inline BigRat as_rational(const RatFunc& v) { return v.to_rational(); }
inline bool value_is_zero(const BigRat& v) { return v.is_zero(); }
inline bool value_is_zero(const RatFunc& v) { return v.is_zero(); }
inline std::string to_display(const BigRat& v) { return v.to_string(); }
inline std::string to_display(const RatFunc& v) { return v.to_string(); }
}  // namespace detail

/// Truncated q-series with exact exponents: coefficient i multiplies
/// q^(offset + i/step_den). The offset may be symbolic in c when T = RatFunc
/// (e.g. -c/24); offsets of operands combined by +/- must differ by a constant
/// multiple of the step. Slots beyond the stored window are unknown, not zero;
/// sums and products keep the minimum known window.
template <class T>
class QSeries {
public:
    QSeries() : offset_(T(0)), step_den_(1) {}
    QSeries(T offset, int step_den, std::vector<T> coef)
        : offset_(std::move(offset)), step_den_(step_den), coef_(std::move(coef)) {
        if (step_den_ != 1 && step_den_ != 2) throw std::invalid_argument("QSeries: step must be 1 or 1/2");
    }

    /// Zero series with the given window.
    static QSeries zero(T offset, int step_den, int slots) {
        return QSeries(std::move(offset), step_den, std::vector<T>(static_cast<size_t>(slots), T(0)));
    }
    /// Constant series c0 * q^0 with the given window.
    static QSeries constant(const T& value, int step_den, int slots) {
        QSeries s = zero(T(0), step_den, slots);
        if (slots > 0) s.coef_[0] = value;
        return s;
    }

    const T& offset() const { return offset_; }
    int step_den() const { return step_den_; }
    int slots() const { return static_cast<int>(coef_.size()); }
    const std::vector<T>& coeffs() const { return coef_; }
    const T& slot(int i) const { return coef_[static_cast<size_t>(i)]; }
    T& slot(int i) { return coef_[static_cast<size_t>(i)]; }

    bool is_identically_zero() const {
        for (const auto& x : coef_)
            if (!detail::value_is_zero(x)) return false;
        return true;
    }

    /// Coefficient of q^(offset + rel); rel must lie on the step grid and inside the window.
    const T& coeff_rel(const BigRat& rel) const {
        const BigRat idx = rel * BigRat(step_den_);
        if (!idx.is_integer()) throw std::domain_error("QSeries: exponent off the step grid");
        if (idx.sign() < 0 || idx >= BigRat(slots())) throw std::domain_error("QSeries: exponent outside window");
        return coef_[static_cast<size_t>(idx.num().get_ui())];
    }

    /// Window shrunk to the given slot count.
    QSeries truncated(int new_slots) const {
        QSeries s = *this;
        if (new_slots < slots()) s.coef_.resize(static_cast<size_t>(new_slots));
        return s;
    }

    /// Same series re-indexed on the half-integer grid.
    QSeries refined() const {
        if (step_den_ == 2) return *this;
        QSeries s(offset_, 2, std::vector<T>(coef_.size() * 2, T(0)));
        for (size_t i = 0; i < coef_.size(); ++i) s.coef_[2 * i] = coef_[i];
        return s;
    }

    QSeries operator-() const {
        QSeries s = *this;
        for (auto& x : s.coef_) x = -x;
        return s;
    }

    QSeries operator+(const QSeries& o) const { return combined(o, false); }
    QSeries operator-(const QSeries& o) const { return combined(o, true); }

    QSeries operator*(const QSeries& o) const {
        const QSeries a = step_den_ < o.step_den_ ? refined() : *this;
        const QSeries b = o.step_den_ < a.step_den_ ? o.refined() : o;
        const int n = std::min(a.slots(), b.slots());
        QSeries r(a.offset_ + b.offset_, a.step_den_, std::vector<T>(static_cast<size_t>(n), T(0)));
        for (int i = 0; i < std::min(a.slots(), n); ++i) {
            if (detail::value_is_zero(a.coef_[static_cast<size_t>(i)])) continue;
            for (int j = 0; i + j < n && j < b.slots(); ++j)
                r.coef_[static_cast<size_t>(i + j)] += a.coef_[static_cast<size_t>(i)] * b.coef_[static_cast<size_t>(j)];
        }
        return r;
    }

    QSeries scaled(const T& s) const {
        QSeries r = *this;
        for (auto& x : r.coef_) x = x * s;
        return r;
    }

    /// Multiplies by q^r.
    QSeries exp_shifted(const T& r) const {
        QSeries s = *this;
        s.offset_ = s.offset_ + r;
        return s;
    }

    /// Euler operator q d/dq: multiplies slot i by (offset + i/step_den).
    QSeries euler_derivative() const {
        QSeries s = *this;
        for (int i = 0; i < slots(); ++i)
            s.coef_[static_cast<size_t>(i)] = s.coef_[static_cast<size_t>(i)] * (offset_ + T(BigRat(i, step_den_)));
        return s;
    }

    /// Multiplicative inverse; requires slot 0 invertible (leading exponent exact).
    QSeries inverse() const {
        if (coef_.empty() || detail::value_is_zero(coef_[0]))
            throw std::domain_error("QSeries: inverse needs a unit leading coefficient");
        QSeries r(-offset_, step_den_, std::vector<T>(coef_.size(), T(0)));
        const T lead_inv = T(1) / coef_[0];
        r.coef_[0] = lead_inv;
        for (size_t n = 1; n < coef_.size(); ++n) {
            T acc(0);
            for (size_t i = 1; i <= n; ++i) acc += coef_[i] * r.coef_[n - i];
            r.coef_[n] = -(acc * lead_inv);
        }
        return r;
    }

    QSeries pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        QSeries acc = constant(T(1), step_den_, slots());
        QSeries base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) acc = acc * base;
            if (e > 1) base = base * base;
        }
        return acc;
    }

    /// True when both series agree on every slot of the smaller window (offsets aligned).
    friend bool agree(const QSeries& a, const QSeries& b) {
        const QSeries d = a - b;
        return d.is_identically_zero();
    }

    std::string to_string(const std::string& var = "q") const {
        std::ostringstream os;
        os << "q^(" << detail::to_display(offset_) << ") * [";
        bool first = true;
        for (int i = 0; i < slots(); ++i) {
            if (detail::value_is_zero(coef_[static_cast<size_t>(i)])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << detail::to_display(coef_[static_cast<size_t>(i)]) << ")";
            if (i > 0) os << "*" << var << "^(" << BigRat(i, step_den_).to_string() << ")";
        }
        if (first) os << "0";
        os << "]";
        return os.str();
    }

private:
    T offset_;
    int step_den_;
    std::vector<T> coef_;

    QSeries combined(const QSeries& other, bool subtract) const {
        QSeries a = step_den_ < other.step_den_ ? refined() : *this;
        QSeries b = other.step_den_ < a.step_den_ ? other.refined() : other;
        // Align to the smaller offset; the offset difference must be a whole number of steps.
        const BigRat diff = detail::as_rational(b.offset_ - a.offset_) * BigRat(a.step_den_);
        if (!diff.is_integer()) throw std::domain_error("QSeries: offsets differ off the step grid");
        long shift = diff.num().get_si();
        if (shift < 0) {
            QSeries r = b.combined(a, subtract);
            if (subtract) {
                for (auto& x : r.coef_) x = -x;
            }
            return r;
        }
        // b starts `shift` slots after a; b is known (zero) below its offset.
        const long known_b = shift + b.slots();
        const long n = std::min<long>(a.slots(), known_b);
        QSeries r(a.offset_, a.step_den_, std::vector<T>(static_cast<size_t>(n), T(0)));
        for (long i = 0; i < n; ++i) r.coef_[static_cast<size_t>(i)] = a.coef_[static_cast<size_t>(i)];
        for (long j = 0; j < b.slots() && shift + j < n; ++j) {
            T& dst = r.coef_[static_cast<size_t>(shift + j)];
            dst = subtract ? dst - b.coef_[static_cast<size_t>(j)] : dst + b.coef_[static_cast<size_t>(j)];
        }
        return r;
    }
};

/// Coefficient-type conversion (e.g. rational series into the RatFunc field).
template <class To, class From>
QSeries<To> convert_series(const QSeries<From>& s) {
    std::vector<To> coef;
    coef.reserve(static_cast<size_t>(s.slots()));
    for (int i = 0; i < s.slots(); ++i) coef.push_back(To(s.slot(i)));
    return QSeries<To>(To(s.offset()), s.step_den(), std::move(coef));
}

/// Specializes a symbolic series at a concrete central charge.
inline QSeries<BigRat> specialize_series(const QSeries<RatFunc>& s, const BigRat& c) {
    std::vector<BigRat> coef;
    coef.reserve(static_cast<size_t>(s.slots()));
    for (int i = 0; i < s.slots(); ++i) coef.push_back(s.slot(i).eval(c));
    return QSeries<BigRat>(s.offset().eval(c), s.step_den(), std::move(coef));
}

/// A q-series tagged with a modular weight. Sums require equal weight; products add weights.
template <class T>
struct ModForm {
    QSeries<T> series;
    int weight = 0;

    ModForm() = default;
    ModForm(QSeries<T> s, int w) : series(std::move(s)), weight(w) {}

    ModForm operator+(const ModForm& o) const {
        if (weight != o.weight) throw std::domain_error("ModForm: weight mismatch in sum");
        return ModForm(series + o.series, weight);
    }
    ModForm operator-(const ModForm& o) const {
        if (weight != o.weight) throw std::domain_error("ModForm: weight mismatch in difference");
        return ModForm(series - o.series, weight);
    }
    ModForm operator*(const ModForm& o) const { return ModForm(series * o.series, weight + o.weight); }
    ModForm scaled(const T& s) const { return ModForm(series.scaled(s), weight); }
};

}  // namespace mlde
