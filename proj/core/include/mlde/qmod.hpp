#pragma once

#include "mlde/qseries.hpp"
#include "mlde/rational.hpp"

namespace mlde {

/// Default truncation depth: series carry this many q-units past their leading exponent.
inline constexpr int kDefaultTruncation = 30;

/// B_n with the z/(e^z - 1) convention (B_1 = -1/2).
BigRat bernoulli_number(int n);

/// B_n(kappa) from e^{z kappa} z/(e^z - 1); B_n(0) = B_n.
BigRat bernoulli_poly(int n, const BigRat& kappa);

/// E_n(q) = -B_n/n! + (2/(n-1)!) sum_{k>=1} k^{n-1} q^k/(1-q^k), truncated past q^K.
/// Odd n yields the zero form. Weight n. Requires n >= 2.
ModForm<BigRat> eisenstein(int n, int K = kDefaultTruncation);

/// Twisted Eisenstein E_n[theta,phi]: constant -B_n(kappa)/n! with kappa = 0 (phi = +1)
/// or 1/2 (phi = -1), plus (2/(n-1)!) sum over k in kappa + positive-integer grid of
/// k^{n-1} theta^m q^{km}. Half-integer step when kappa = 1/2. Zero for every odd n,
/// in all sectors. Requires n >= 1.
ModForm<BigRat> twisted_eisenstein(int n, int theta, int phi, int K = kDefaultTruncation);

/// q^{1/24} prod_{m>=1} (1 - q^m), truncated past q^K (relative to the leading exponent).
QSeries<BigRat> dedekind_eta(int K = kDefaultTruncation);

/// The same product in q^{1/2}: q^{1/48} prod_{m>=1} (1 - q^{m/2}); step 1/2.
QSeries<BigRat> dedekind_eta_half(int K = kDefaultTruncation);

/// One Serre-derivative step on a weight-2m object: (q d/dq + 2m E_2) z.
template <class T>
QSeries<T> serre_step(const QSeries<T>& z, int m) {
    QSeries<T> d = z.euler_derivative();
    if (m == 0) return d;
    const int Kq = (z.slots() + z.step_den() - 1) / z.step_den() + 1;
    const QSeries<T> e2 = convert_series<T>(eisenstein(2, Kq).series);
    return d + (e2 * z).scaled(T(BigRat(2L * m)));
}

}  // namespace mlde
