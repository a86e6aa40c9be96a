#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "mlde/errors.hpp"
#include "mlde/frob.hpp"
#include "mlde/genus0.hpp"
#include "mlde/zhu.hpp"

using namespace mlde;

namespace {

const RatFunc cr = RatFunc::variable();

RatFunc rfp(std::initializer_list<BigRat> coeffs) {
    return RatFunc(UniPoly::from_coeffs(std::vector<BigRat>(coeffs)));
}

bool rf_eq(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

FockVector<RatFunc> single(Partition p) {
    FockVector<RatFunc> v;
    for (int n : p) v.level += n;
    v.terms[std::move(p)] = RatFunc(1);
    return v;
}

}  // namespace

TEST_CASE("Reflection constraint matrix factors unit triangularly") {
    const auto m1 = m_matrix(1);
    REQUIRE(m1.rows() == 1);
    CHECK(m1.at(0, 0) == BigRat(1));

    // Row k, column m: binom(m, 2k) + binom(-m, 2k).
    const auto m3 = m_matrix(3);
    const BigRat expect[3][3] = {{BigRat(1), BigRat(4), BigRat(9)},
                                 {BigRat(1), BigRat(5), BigRat(15)},
                                 {BigRat(1), BigRat(7), BigRat(28)}};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) CHECK(m3.at(i, j) == expect[i][j]);

    for (int l = 1; l <= 12; ++l) {
        const auto m = m_matrix(l);
        CHECK(determinant(m) == BigRat(1));
        const auto [lo, up] = lu_m(l);
        CHECK(lo * up == m);
        for (size_t i = 0; i < m.rows(); ++i) {
            CHECK(lo.at(i, i) == BigRat(1));
            CHECK(up.at(i, i) == BigRat(1));
            for (size_t j = i + 1; j < m.rows(); ++j) {
                CHECK(lo.at(i, j).is_zero());
                CHECK(up.at(j, i).is_zero());
            }
        }
    }

    CHECK_THROWS_AS((void)m_matrix(0), std::invalid_argument);
}

TEST_CASE("Dual-insertion contractions") {
    for (int l = 1; l <= 4; ++l) {
        const auto mu0 = mu_fock(l, 0);
        CHECK(mu0.level == 0);
        REQUIRE(mu0.terms.size() == 1);
        const RatFunc sign((l % 2 != 0) ? BigRat(-1) : BigRat(1));
        CHECK(rf_eq(mu0.terms.at(Partition{}), sign));
    }

    // The weight-1 state vanishes: no vacuum descendants at that level.
    CHECK(mu_fock(2, 1).terms.empty());
    CHECK(mu_fock(3, 1).terms.empty());

    // Weight-2 state for l = 3: coefficient 2l(-1)^l/c on L(-2)|0>.
    const auto mu2 = mu_fock(3, 2);
    REQUIRE(mu2.terms.size() == 1);
    CHECK(rf_eq(mu2.terms.at(Partition{2}), RatFunc(BigRat(-6)) / cr));

    CHECK_THROWS_AS((void)mu_fock(1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)mu_fock(2, -1), std::invalid_argument);
    CHECK_THROWS_AS((void)mu_fock(0, 0), std::invalid_argument);
}

TEST_CASE("Zero modes on a primary") {
    // o(|0>) is the identity; o of the conformal vector is L(0).
    FockVector<RatFunc> vac;
    vac.terms[Partition{}] = RatFunc(1);
    CHECK(rf_eq(zero_mode_on_primary(vac, BigRat(7)), RatFunc(1)));
    CHECK(rf_eq(zero_mode_on_primary(single({2}), BigRat(7)), RatFunc(7)));

    for (const BigRat& l : {BigRat(1), BigRat(3), BigRat(5, 2)}) {
        CHECK(rf_eq(zero_mode_on_primary(single({2}), l), RatFunc(l)));
        CHECK(rf_eq(zero_mode_on_primary(single({4}), l), RatFunc(BigRat(3) * l)));
        CHECK(rf_eq(zero_mode_on_primary(single({3}), l), RatFunc(BigRat(-2) * l)));
        CHECK(rf_eq(zero_mode_on_primary(single({2, 2}), l), RatFunc(l * (l + BigRat(2)))));
    }

    // Casimir zero modes at l = 1: the weight-2 and weight-4 scalars.
    CHECK(rf_eq(zero_mode_on_primary(casimir_fock(BigRat(1), 2), BigRat(1)),
                RatFunc(BigRat(-2)) / cr));
    const RatFunc b4 = RatFunc(-9) * (cr + RatFunc(6)) / (cr * rfp({22, 5}));
    CHECK(rf_eq(zero_mode_on_primary(casimir_fock(BigRat(1), 4), BigRat(1)), b4));
}

TEST_CASE("Weight-one correlator closed form") {
    const RatFunc p1 = derive_pl(1);
    CHECK(rf_eq(p1, rfp({0, 22, 5}) / rfp({10, -1})));  // c(5c+22)/(10-c)

    const auto g = correlator_poly(1, p1);
    REQUIRE(g.A.size() == 3);
    CHECK(rf_eq(g.A[0], RatFunc(-1)));
    CHECK(rf_eq(g.A[1], RatFunc(4) - RatFunc(2) * p1 / cr));
    CHECK(rf_eq(g.A[2], -p1 + RatFunc(4) * p1 / cr - RatFunc(6)));
    CHECK(rf_eq(g.a(4), g.A[0]));
    CHECK(rf_eq(g.a(3), g.A[1]));
    CHECK_THROWS_AS((void)g.a(5), std::out_of_range);

    const auto b = b_sequence(g, 4);
    CHECK(rf_eq(b[0], -p1));
    CHECK(b[1].is_zero());
    CHECK(rf_eq(b[2], -(RatFunc(2) * p1 / cr)));
    CHECK(rf_eq(b[3], -b[2]));
    const RatFunc b4 = RatFunc(-9) * (cr + RatFunc(6)) / (cr * rfp({22, 5}));
    CHECK(rf_eq(b[4], p1 * b4));
}

TEST_CASE("Independent primary-count derivations agree") {
    // Order three: the closed form (7c+68)(2c-1)(5c+22) / (2(c^2-55c+748)).
    const RatFunc p2 = derive_pl(2);
    CHECK(rf_eq(p2, rfp({68, 7}) * rfp({-1, 2}) * rfp({22, 5}) / (RatFunc(2) * rfp({748, -55, 1}))));

    // The same counts out of the series solver, an unrelated derivation route.
    const auto prof2 = solve_symbolic(assemble_mlde(2, 12), 2, false, 2);
    CHECK(rf_eq(p2, prof2.p_funcs.at(BigRat(2))));

    const auto prof3 = solve_symbolic(assemble_mlde(3, 12), 3, false, 3);
    CHECK(rf_eq(derive_pl(3), prof3.p_funcs.at(BigRat(3))));

    CHECK_THROWS_AS((void)derive_pl(0), std::invalid_argument);
}

TEST_CASE("Expansion coefficients respect the reflection identity") {
    for (int l = 2; l <= 3; ++l) {
        const RatFunc p = derive_pl(l);
        const auto g = correlator_poly(l, p);
        const RatFunc sign((l % 2 != 0) ? BigRat(-1) : BigRat(1));
        CHECK(rf_eq(g.A[0], sign));

        const int top = 2 * l + 4;
        const auto b = b_sequence(g, top);
        CHECK(rf_eq(b[0], sign * p));
        CHECK(b[1].is_zero());

        // Symmetry of G forces B_n = sum_{r<=n} binom(-r, n-r)(-1)^r B_r ...
        for (int n = 0; n <= top; ++n) {
            RatFunc acc(0);
            for (int r = 0; r <= n; ++r) {
                BigRat w = binomial(BigRat(-r), n - r);
                if (r % 2 != 0) w = -w;
                acc += RatFunc(w) * b[static_cast<size_t>(r)];
            }
            CHECK(rf_eq(b[static_cast<size_t>(n)], acc));
        }
        // ... so each odd coefficient is half the even-index sum below it.
        for (int n = 3; n <= top; n += 2) {
            RatFunc acc(0);
            for (int r = 2; r < n; ++r) {
                BigRat w = binomial(BigRat(-r), n - r);
                if (r % 2 != 0) w = -w;
                acc += RatFunc(w) * b[static_cast<size_t>(r)];
            }
            CHECK(rf_eq(b[static_cast<size_t>(n)], acc / RatFunc(2)));
        }

        // Every even coefficient through the closure order matches the direct
        // Casimir zero mode, including the one the solve never saw.
        for (int k = 1; k <= l + 1; ++k)
            CHECK(rf_eq(b[static_cast<size_t>(2 * k)],
                        p * zero_mode_on_primary(casimir_fock(BigRat(l), 2 * k), BigRat(l))));
    }
}
