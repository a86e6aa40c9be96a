#include "mlde/genus0.hpp"

#include <stdexcept>
#include <string>

#include "mlde/errors.hpp"

namespace mlde {

namespace {

BigRat parity(int l) { return (l % 2 != 0) ? BigRat(-1) : BigRat(1); }

/// binom(m, n) + binom(-m, n); integral for integer m.
BigRat reflection_coeff(long m, long n) {
    return binomial(BigRat(m), n) + binomial(BigRat(-m), n);
}

void check_order(int l, const char* who) {
    if (l < 1) throw std::invalid_argument(std::string(who) + ": l must be a positive integer");
}

}  // namespace

const RatFunc& CorrelatorPoly::a(int r) const {
    if (r < 0 || r > 4 * l) throw std::out_of_range("CorrelatorPoly::a: index outside [0, 4l]");
    const int idx = r <= 2 * l ? r : 4 * l - r;
    return A.at(static_cast<size_t>(idx));
}

FockVector<RatFunc> mu_fock(int l, int m) {
    check_order(l, "mu_fock");
    if (m < 0 || m >= l) throw std::invalid_argument("mu_fock: need 0 <= m < l");

    const auto basis = fock_basis(m, 2);
    std::vector<UniPoly> rhs;
    rhs.reserve(basis.size());
    for (const auto& p : basis) {
        BigRat val = parity(l);
        long s = 2L * l - m - 1;
        for (const int n : p) {
            val *= BigRat((l - 1) * (n + 1L) - s);
            s += n;
        }
        rhs.emplace_back(val);
    }
    const auto sol = solve_poly_linear(gram_matrix(m), rhs);

    FockVector<RatFunc> out;
    out.level = m;
    for (size_t i = 0; i < basis.size(); ++i)
        if (!sol.x[i].is_zero()) out.terms[basis[i]] = sol.x[i];
    return out;
}

RatFunc zero_mode_on_primary(const FockVector<RatFunc>& v, const BigRat& l) {
    RatFunc acc(0);
    for (const auto& [p, coeff] : v.terms) {
        long k = -1;
        for (const int n : p) k += n;
        BigRat f(1);
        for (const int n : p) {
            BigRat step = l * BigRat(n - 1) + BigRat(k + 1 - n);
            if (n % 2 != 0) step = -step;
            f *= step;
            k -= n;
        }
        acc += coeff * RatFunc(f);
    }
    return acc;
}

Matrix<BigRat> m_matrix(int l) {
    check_order(l, "m_matrix");
    Matrix<BigRat> m(static_cast<size_t>(l), static_cast<size_t>(l));
    for (int k = 1; k <= l; ++k)
        for (int col = 1; col <= l; ++col)
            m.at(static_cast<size_t>(k - 1), static_cast<size_t>(col - 1)) = reflection_coeff(col, 2L * k);
    return m;
}

std::pair<Matrix<BigRat>, Matrix<BigRat>> lu_m(int l) {
    check_order(l, "lu_m");
    const auto n = static_cast<size_t>(l);
    Matrix<BigRat> lo(n, n), up(n, n);
    for (long i = 1; i <= l; ++i)
        for (long j = 1; j <= i; ++j)
            lo.at(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1)) =
                binomial(BigRat(2 * i - j - 1), j - 1);
    for (long j = 1; j <= l; ++j)
        for (long k = j; k <= l; ++k)
            up.at(static_cast<size_t>(j - 1), static_cast<size_t>(k - 1)) =
                BigRat(k, j) * binomial(BigRat(j + k - 1), 2 * j - 1);
    return {std::move(lo), std::move(up)};
}

CorrelatorPoly correlator_poly(int l, const RatFunc& pl) {
    check_order(l, "correlator_poly");
    CorrelatorPoly g;
    g.l = l;
    g.A.assign(static_cast<size_t>(2 * l + 1), RatFunc(0));

    // A_0..A_{l-1}: contract the dual insertion and absorb the creation modes
    // into the surviving primary, then invert the triangular relation between
    // the two expansions of the same coefficient.
    for (int m = 0; m < l; ++m) {
        const auto mu = mu_fock(l, m);
        RatFunc cm(0);
        for (const auto& [p, coeff] : mu.terms) {
            BigRat w(1);
            long k = m - 1;
            for (const int n : p) {
                w *= BigRat((l - 1) * (n - 1L) + k);
                k -= n;
            }
            cm += coeff * RatFunc(w);
        }
        RatFunc am = (m % 2 != 0) ? -cm : cm;
        for (int r = 0; r < m; ++r)
            am -= RatFunc(binomial(BigRat(2 * l - r), m - r)) * g.A[static_cast<size_t>(r)];
        g.A[static_cast<size_t>(m)] = am;
    }

    // Even constraints B_{2k}, k = 1..l: the left side carries pl through the
    // Casimir zero modes, the known A's move to the right side.
    std::vector<RatFunc> rhs;
    rhs.reserve(static_cast<size_t>(l));
    for (int k = 1; k <= l; ++k) {
        RatFunc b2k = pl * zero_mode_on_primary(casimir_fock(BigRat(l), 2 * k), BigRat(l));
        for (int m = l + 1; m <= 2 * l; ++m)
            b2k -= RatFunc(reflection_coeff(m, 2L * k)) * g.A[static_cast<size_t>(2 * l - m)];
        rhs.push_back(b2k);
    }
    const auto sol = solve_linear(matrix_cast<RatFunc>(m_matrix(l)), rhs);
    for (int m = 1; m <= l; ++m)
        g.A[static_cast<size_t>(2 * l - m)] = sol.x[static_cast<size_t>(m - 1)];

    // The order-0 constraint fixes the middle coefficient:
    // B_0 = (-1)^l pl = A_{2l} + 2 sum_{r<2l} A_r.
    RatFunc mid = RatFunc(parity(l)) * pl;
    for (int r = 0; r < 2 * l; ++r) mid -= RatFunc(2) * g.A[static_cast<size_t>(r)];
    g.A[static_cast<size_t>(2 * l)] = mid;
    return g;
}

std::vector<RatFunc> b_sequence(const CorrelatorPoly& g, int n_max) {
    if (n_max < 0) throw std::invalid_argument("b_sequence: negative order");
    std::vector<RatFunc> out;
    out.reserve(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        RatFunc bn(0);
        for (int r = 0; r <= 4 * g.l; ++r) {
            const BigRat w = binomial(BigRat(r - 2 * g.l), n);
            if (!w.is_zero()) bn += RatFunc(w) * g.a(r);
        }
        out.push_back(bn);
    }
    return out;
}

RatFunc derive_pl(int l) {
    check_order(l, "derive_pl");
    const int target = 2 * l + 2;

    // The reconstructed B_{2l+2} is affine in pl; two evaluations recover both
    // affine coefficients exactly.
    const RatFunc at0 = b_sequence(correlator_poly(l, RatFunc(0)), target).back();
    const RatFunc at1 = b_sequence(correlator_poly(l, RatFunc(1)), target).back();
    const RatFunc direct = zero_mode_on_primary(casimir_fock(BigRat(l), target), BigRat(l));

    const RatFunc den = direct - (at1 - at0);
    if (den.is_zero()) throw Inconsistent("closure constraint leaves the primary count undetermined");
    return at0 / den;
}

}  // namespace mlde
