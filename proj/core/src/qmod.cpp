#include "mlde/qmod.hpp"

#include <stdexcept>
#include <vector>

namespace mlde {

BigRat bernoulli_number(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli_number: n < 0");
    std::vector<BigRat> b(static_cast<size_t>(n) + 1);
    b[0] = BigRat(1);
    for (int m = 1; m <= n; ++m) {
        BigRat acc(0);
        for (int j = 0; j < m; ++j) acc += binomial(BigRat(m + 1), j) * b[static_cast<size_t>(j)];
        b[static_cast<size_t>(m)] = -acc / BigRat(m + 1);
    }
    return b[static_cast<size_t>(n)];
}

BigRat bernoulli_poly(int n, const BigRat& kappa) {
    BigRat acc(0);
    for (int k = 0; k <= n; ++k)
        acc += binomial(BigRat(n), k) * bernoulli_number(k) * kappa.pow(n - k);
    return acc;
}

ModForm<BigRat> eisenstein(int n, int K) {
    if (n < 2) throw std::invalid_argument("eisenstein: n >= 2 required");
    if (n % 2 != 0) return ModForm<BigRat>(QSeries<BigRat>::zero(BigRat(0), 1, K + 1), n);
    std::vector<BigRat> coef(static_cast<size_t>(K) + 1, BigRat(0));
    coef[0] = -bernoulli_number(n) / factorial(n);
    const BigRat scale = BigRat(2) / factorial(n - 1);
    for (long k = 1; k <= K; ++k) {
        const BigRat term = BigRat(k).pow(n - 1) * scale;
        for (long m = 1; k * m <= K; ++m) coef[static_cast<size_t>(k * m)] += term;
    }
    return ModForm<BigRat>(QSeries<BigRat>(BigRat(0), 1, std::move(coef)), n);
}

ModForm<BigRat> twisted_eisenstein(int n, int theta, int phi, int K) {
    if (n < 1) throw std::invalid_argument("twisted_eisenstein: n >= 1 required");
    if ((theta != 1 && theta != -1) || (phi != 1 && phi != -1))
        throw std::invalid_argument("twisted_eisenstein: theta, phi must be +-1");
    const bool half = (phi == -1);
    const BigRat kappa = half ? BigRat(1, 2) : BigRat(0);
    const int step = half ? 2 : 1;
    // Every odd-index twisted series vanishes identically, in all sectors.
    if (n % 2 != 0) return ModForm<BigRat>(QSeries<BigRat>::zero(BigRat(0), step, K * step + 1), n);
    std::vector<BigRat> coef(static_cast<size_t>(K * step) + 1, BigRat(0));
    coef[0] = -bernoulli_poly(n, kappa) / factorial(n);
    const BigRat scale = BigRat(2) / factorial(n - 1);
    if (half) {
        // k runs over 1/2, 3/2, ...; slot index of q^{km} is (2k)m.
        for (long k2 = 1; k2 <= K * step; k2 += 2) {
            const BigRat term = BigRat(k2, 2).pow(n - 1) * scale;
            for (long m = 1; k2 * m <= K * step; ++m) {
                const BigRat signed_term = (theta == -1 && m % 2) ? -term : term;
                coef[static_cast<size_t>(k2 * m)] += signed_term;
            }
        }
    } else {
        for (long k = 1; k <= K; ++k) {
            const BigRat term = BigRat(k).pow(n - 1) * scale;
            for (long m = 1; k * m <= K; ++m) {
                const BigRat signed_term = (theta == -1 && m % 2) ? -term : term;
                coef[static_cast<size_t>(k * m)] += signed_term;
            }
        }
    }
    return ModForm<BigRat>(QSeries<BigRat>(BigRat(0), step, std::move(coef)), n);
}

QSeries<BigRat> dedekind_eta(int K) {
    std::vector<BigRat> f(static_cast<size_t>(K) + 1, BigRat(0));
    f[0] = BigRat(1);
    for (int m = 1; m <= K; ++m)
        for (int i = K; i >= m; --i) f[static_cast<size_t>(i)] -= f[static_cast<size_t>(i - m)];
    return QSeries<BigRat>(BigRat(1, 24), 1, std::move(f));
}

QSeries<BigRat> dedekind_eta_half(int K) {
    const int n = 2 * K;
    std::vector<BigRat> f(static_cast<size_t>(n) + 1, BigRat(0));
    f[0] = BigRat(1);
    for (int m = 1; m <= n; ++m)
        for (int i = n; i >= m; --i) f[static_cast<size_t>(i)] -= f[static_cast<size_t>(i - m)];
    return QSeries<BigRat>(BigRat(1, 48), 2, std::move(f));
}

}  // namespace mlde
