#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "mlde/linalg.hpp"
#include "mlde/qmod.hpp"
#include "mlde/qseries.hpp"
#include "mlde/rational.hpp"
#include "mlde/rational_function.hpp"

using namespace mlde;

namespace {

// prod_{n>=1, n-1/2 <= K} (1 + sign * q^{n-1/2}) on the half-integer grid.
QSeries<BigRat> half_odd_product(int K, int sign) {
    const int slots = 2 * K + 1;
    auto f = QSeries<BigRat>::constant(BigRat(1), 2, slots);
    for (int shift = 1; shift < slots; shift += 2)  // shift = 2n - 1 encodes exponent n - 1/2
        for (int i = slots - 1; i >= shift; --i)
            f.slot(i) += BigRat(sign) * f.slot(i - shift);
    return f;
}

}  // namespace

TEST_CASE("Bernoulli numbers and polynomials") {
    CHECK(bernoulli_number(0) == BigRat(1));
    CHECK(bernoulli_number(1) == BigRat(-1, 2));
    CHECK(bernoulli_number(2) == BigRat(1, 6));
    CHECK(bernoulli_number(3) == BigRat(0));
    CHECK(bernoulli_number(4) == BigRat(-1, 30));
    CHECK(bernoulli_number(12) == BigRat(-691, 2730));

    const BigRat half(1, 2);
    CHECK(bernoulli_poly(1, half) == BigRat(0));            // B_1(k) = k - 1/2
    CHECK(bernoulli_poly(1, BigRat(0)) == BigRat(-1, 2));
    CHECK(bernoulli_poly(2, half) == BigRat(-1, 12));
    for (int n = 0; n <= 8; ++n) CHECK(bernoulli_poly(n, BigRat(0)) == bernoulli_number(n));
    // B_n(1) = B_n for n != 1.
    CHECK(bernoulli_poly(4, BigRat(1)) == bernoulli_number(4));
}

TEST_CASE("Eisenstein series in the -B_n/n! normalization") {
    const auto e2 = eisenstein(2);
    CHECK(e2.weight == 2);
    CHECK(e2.series.slot(0) == BigRat(-1, 12));
    CHECK(e2.series.slot(1) == BigRat(2));
    CHECK(e2.series.slot(2) == BigRat(6));
    CHECK(e2.series.slot(3) == BigRat(8));
    CHECK(e2.series.slot(4) == BigRat(14));  // 2 sigma_1(4)

    const auto e4 = eisenstein(4);
    CHECK(e4.series.slot(0) == BigRat(1, 720));
    CHECK(e4.series.slot(1) == BigRat(1, 3));
    CHECK(e4.series.slot(2) == BigRat(3));       // (2/3!) sigma_3(2) = 9/3
    CHECK(e4.series.slot(3) == BigRat(28, 3));

    const auto e6 = eisenstein(6);
    CHECK(e6.series.slot(0) == BigRat(-1, 30240));
    CHECK(e6.series.slot(1) == BigRat(1, 60));

    CHECK(eisenstein(5).series.is_identically_zero());
    CHECK(eisenstein(5).weight == 5);
    CHECK_THROWS_AS(eisenstein(1), std::invalid_argument);
}

TEST_CASE("Untwisting the twisted Eisenstein series recovers E_n") {
    for (int n = 2; n <= 12; ++n) {
        const auto plain = eisenstein(n);
        const auto twisted = twisted_eisenstein(n, 1, 1);
        CHECK(twisted.weight == n);
        CHECK(agree(plain.series, twisted.series));
        CHECK(twisted.series.step_den() == 1);
    }
}

TEST_CASE("Ramond-sector Eisenstein series E_n[1,-1]") {
    const auto f2 = twisted_eisenstein(2, 1, -1);
    CHECK(f2.series.step_den() == 2);
    CHECK(f2.series.coeff_rel(BigRat(0)) == BigRat(1, 24));
    CHECK(f2.series.coeff_rel(BigRat(1, 2)) == BigRat(1));
    CHECK(f2.series.coeff_rel(BigRat(1)) == BigRat(1));
    CHECK(f2.series.coeff_rel(BigRat(3, 2)) == BigRat(4));
    CHECK(f2.series.coeff_rel(BigRat(2)) == BigRat(1));
    CHECK(f2.series.coeff_rel(BigRat(5, 2)) == BigRat(6));

    // Odd indices vanish in every sector.
    CHECK(twisted_eisenstein(1, 1, -1).series.is_identically_zero());
    CHECK(twisted_eisenstein(3, -1, -1).series.is_identically_zero());

    const auto f4 = twisted_eisenstein(4, 1, -1);
    // k^3 sum at exponent 3/2: (1/2)^3 + (3/2)^3 scaled by 2/3!.
    CHECK(f4.series.coeff_rel(BigRat(0)) == -bernoulli_poly(4, BigRat(1, 2)) / factorial(4));
    CHECK(f4.series.coeff_rel(BigRat(3, 2)) == BigRat(1, 3) * (BigRat(1, 8) + BigRat(27, 8)));

    CHECK_THROWS_AS(twisted_eisenstein(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(twisted_eisenstein(0, 1, -1), std::invalid_argument);
}

TEST_CASE("Dedekind eta coefficients follow the pentagonal number pattern") {
    const int K = 200;
    const auto eta = dedekind_eta(K);
    CHECK(eta.offset() == BigRat(1, 24));
    CHECK(eta.step_den() == 1);
    REQUIRE(eta.slots() == K + 1);

    std::map<long, long> pent;  // exponent -> coefficient of prod (1 - q^m)
    pent[0] = 1;
    for (long k = 1; 3 * k * k <= 2 * K + k; ++k) {
        const long sign = (k % 2 == 0) ? 1 : -1;
        pent[k * (3 * k - 1) / 2] = sign;
        pent[k * (3 * k + 1) / 2] = sign;
    }
    for (int n = 0; n <= K; ++n) {
        auto it = pent.find(n);
        CHECK(eta.slot(n) == BigRat(it == pent.end() ? 0 : it->second));
    }
}

TEST_CASE("Eta quotient equals the signed half-odd product (free fermion)") {
    const int K = 40;
    const auto quotient = dedekind_eta_half(K) * dedekind_eta(K).inverse();
    CHECK(quotient.offset() == BigRat(-1, 48));

    const auto signed_prod = half_odd_product(K / 2, -1);
    const auto unsigned_prod = half_odd_product(K / 2, +1);
    const auto aligned = quotient.exp_shifted(BigRat(1, 48));

    const int n = std::min(aligned.slots(), signed_prod.slots());
    for (int i = 0; i < n; ++i) {
        CHECK(aligned.slot(i) == signed_prod.slot(i));
        // States at half-integer grade carry the odd sign: |signed| matches the plus product.
        CHECK(aligned.slot(i).abs() == unsigned_prod.slot(i));
    }
}

TEST_CASE("QSeries window and alignment semantics") {
    using S = QSeries<BigRat>;
    const S a(BigRat(0), 1, {BigRat(1), BigRat(2), BigRat(3), BigRat(4)});
    const S b(BigRat(1), 1, {BigRat(5), BigRat(6)});

    const S sum = a + b;
    CHECK(sum.offset() == BigRat(0));
    CHECK(sum.slots() == 3);  // b's window ends at exponent 2
    CHECK(sum.slot(0) == BigRat(1));
    CHECK(sum.slot(1) == BigRat(7));
    CHECK(sum.slot(2) == BigRat(9));

    const S diff = b - a;  // negative shift path
    CHECK(diff.offset() == BigRat(0));
    CHECK(diff.slot(0) == BigRat(-1));
    CHECK(diff.slot(1) == BigRat(3));

    const S prod = a * b;
    CHECK(prod.offset() == BigRat(1));
    CHECK(prod.slots() == 2);
    CHECK(prod.slot(0) == BigRat(5));
    CHECK(prod.slot(1) == BigRat(16));

    // Step refinement: integer grid against half-integer grid.
    const S h(BigRat(1, 2), 2, {BigRat(1), BigRat(1)});
    const S mixed = h + a;
    CHECK(mixed.step_den() == 2);
    CHECK(mixed.offset() == BigRat(0));
    CHECK(mixed.coeff_rel(BigRat(1, 2)) == BigRat(1));
    CHECK(mixed.coeff_rel(BigRat(1)) == BigRat(3));

    CHECK_THROWS_AS(a + S(BigRat(1, 3), 1, {BigRat(1)}), std::domain_error);

    const S inv = a.inverse();
    const S one = a * inv;
    CHECK(one.slot(0) == BigRat(1));
    for (int i = 1; i < one.slots(); ++i) CHECK(one.slot(i) == BigRat(0));

    CHECK(agree(a.pow(2), a * a));
    CHECK(agree(a.pow(-1), inv));

    const auto sym = convert_series<RatFunc>(a);
    CHECK(sym.slot(2) == RatFunc(3));
    CHECK(agree(specialize_series(sym, BigRat(7)), a));

    ModForm<BigRat> w2(a, 2), w4(b, 4);
    CHECK_THROWS_AS(w2 + w4, std::domain_error);
    CHECK((w2 * w4).weight == 6);
}

TEST_CASE("Serre step: indicial behavior on a bare power of q") {
    // D^2 acting on q^x has leading coefficient x(x - 1/6).
    const BigRat x(5, 7);
    QSeries<BigRat> z(x, 1, std::vector<BigRat>(8, BigRat(0)));
    z.slot(0) = BigRat(1);
    const auto d2 = serre_step(serre_step(z, 0), 1);
    CHECK(d2.slot(0) == x * (x - BigRat(1, 6)));

    // Same with a symbolic leading exponent -c/24: leading value c(c+4)/576.
    const RatFunc c = RatFunc::variable();
    const RatFunc xs = -c * RatFunc(BigRat(1, 24));
    QSeries<RatFunc> zs(xs, 1, std::vector<RatFunc>(8, RatFunc(0)));
    zs.slot(0) = RatFunc(1);
    const auto d2s = serre_step(serre_step(zs, 0), 1);
    CHECK(d2s.slot(0) == c * (c + RatFunc(4)) * RatFunc(BigRat(1, 576)));
}

TEST_CASE("Serre derivative of E_4 lands in the span of E_6 and E_2 E_4") {
    const int K = 25;
    const auto e4 = eisenstein(4, K);
    const auto lhs = serre_step(e4.series, 2);

    const auto e6 = eisenstein(6, K).series;
    const auto e2e4 = eisenstein(2, K).series * e4.series;

    // Fit the two coefficients from the first two slots, then verify the rest.
    Matrix<BigRat> m(2, 2);
    m.at(0, 0) = e6.slot(0);
    m.at(0, 1) = e2e4.slot(0);
    m.at(1, 0) = e6.slot(1);
    m.at(1, 1) = e2e4.slot(1);
    const auto fit = solve_linear(m, {lhs.slot(0), lhs.slot(1)});
    const auto rhs = e6.scaled(fit.x[0]) + e2e4.scaled(fit.x[1]);
    CHECK(agree(lhs, rhs));
    CHECK(lhs.slots() >= 21);
}
