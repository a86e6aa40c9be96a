#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "mlde/errors.hpp"
#include "mlde/linalg.hpp"
#include "mlde/polynomial.hpp"
#include "mlde/vir.hpp"

using namespace mlde;

namespace {

const RatFunc cvar = RatFunc::variable();

FockVector<RatFunc> unit_vac(int level, const Partition& p) {
    FockVector<RatFunc> v;
    v.level = level;
    v.terms[p] = RatFunc(1);
    return v;
}

PrimaryVector<RatFunc> unit_primary(const BigRat& h, int level, const Partition& p) {
    PrimaryVector<RatFunc> v;
    v.weight = h;
    v.level = level;
    v.terms[p] = RatFunc(1);
    return v;
}

FockTerms<RatFunc> pruned_difference(const FockTerms<RatFunc>& a, const FockTerms<RatFunc>& b) {
    FockTerms<RatFunc> d = a;
    for (const auto& [p, x] : b) d[p] -= x;
    for (auto it = d.begin(); it != d.end();) it = it->second.is_zero() ? d.erase(it) : std::next(it);
    return d;
}

// [L(m), L(n)] v == (m - n) L(m+n) v + (c/12)(m^3 - m) delta_{m,-n} v.
template <class V>
void check_bracket(const V& v, long m, long n) {
    const auto lhs = pruned_difference(l_mode_apply(m, l_mode_apply(n, v)).terms,
                                       l_mode_apply(n, l_mode_apply(m, v)).terms);
    FockTerms<RatFunc> rhs;
    for (const auto& [p, x] : l_mode_apply(m + n, v).terms) {
        const RatFunc scaled = x * RatFunc(BigRat(m - n));
        if (!scaled.is_zero()) rhs[p] = scaled;
    }
    if (m + n == 0 && !(m == 0)) {
        const RatFunc central = cvar * RatFunc(BigRat(m * m * m - m, 12));
        for (const auto& [p, x] : v.terms) {
            rhs[p] += x * central;
            if (rhs[p].is_zero()) rhs.erase(p);
        }
    }
    CHECK(lhs == rhs);
}

UniPoly rand_poly(std::mt19937& rng, int max_deg, int bound) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> coef(-bound, bound);
    std::vector<BigRat> c(static_cast<size_t>(deg(rng)) + 1);
    for (auto& x : c) x = BigRat(coef(rng));
    return UniPoly::from_coeffs(std::move(c));
}

}  // namespace

TEST_CASE("fock_basis enumerates descending partitions in order") {
    CHECK(fock_basis(2, 2) == std::vector<Partition>{{2}});
    CHECK(fock_basis(6, 2) == std::vector<Partition>{{6}, {4, 2}, {3, 3}, {2, 2, 2}});
    CHECK(fock_basis(0, 2) == std::vector<Partition>{{}});
    CHECK(fock_basis(1, 2).empty());
    CHECK(fock_basis(4, 1).size() == 5);  // p(4)
    CHECK(fock_basis(3, 1) == std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}});
    CHECK_THROWS_AS(fock_basis(-1, 2), std::invalid_argument);
}

TEST_CASE("l_mode_apply on vacuum descendants") {
    const auto vac22 = l_mode_apply(2, unit_vac(2, {2}));  // L(2) L(-2)|0> = (c/2)|0>
    REQUIRE(vac22.terms.size() == 1);
    CHECK(vac22.terms.at({}) == cvar * RatFunc(BigRat(1, 2)));
    CHECK(vac22.level == 0);

    // L(1) L(-2)|0> = 3 L(-1)|0> = 0.
    CHECK(l_mode_apply(1, unit_vac(2, {2})).terms.empty());

    // L(0) acts by the level.
    const auto v = l_mode_apply(0, unit_vac(6, {4, 2}));
    CHECK(v.terms.at({4, 2}) == RatFunc(6));

    // L(-1) L(-2)|0> = L(-3)|0>.
    const auto w = l_mode_apply(-1, unit_vac(2, {2}));
    REQUIRE(w.terms.size() == 1);
    CHECK(w.terms.at({3}) == RatFunc(1));
    CHECK(w.level == 3);

    // Annihilation below the vacuum.
    CHECK(l_mode_apply(5, unit_vac(2, {2})).terms.empty());
}

TEST_CASE("l_mode_apply on primary descendants") {
    const BigRat h(3, 7);
    // L(0)|b> = h|b>.
    CHECK(l_mode_apply(0, unit_primary(h, 0, {})).terms.at({}) == RatFunc(h));
    // L(1) L(-1)|b> = 2h|b>.
    CHECK(l_mode_apply(1, unit_primary(h, 1, {1})).terms.at({}) == RatFunc(h) * RatFunc(2));
    // L(2) L(-2)|b> = (4h + c/2)|b>.
    CHECK(l_mode_apply(2, unit_primary(h, 2, {2})).terms.at({}) ==
          RatFunc(h) * RatFunc(4) + cvar * RatFunc(BigRat(1, 2)));
    // L(1) L(-2)|b> = 3 L(-1)|b>, nonzero unlike the vacuum case.
    const auto v = l_mode_apply(1, unit_primary(h, 2, {2}));
    REQUIRE(v.terms.size() == 1);
    CHECK(v.terms.at({1}) == RatFunc(3));
    // L(1)|b> = 0.
    CHECK(l_mode_apply(1, unit_primary(h, 0, {})).terms.empty());
}

TEST_CASE("Virasoro bracket holds on random vectors") {
    std::mt19937 rng(31415);
    std::uniform_int_distribution<long> coef(-5, 5);
    std::uniform_int_distribution<int> pick(0, 1);
    for (int level = 0; level <= 6; ++level) {
        const auto vac_basis = fock_basis(level, 2);
        FockVector<RatFunc> v;
        v.level = vac_basis.empty() ? 0 : level;
        for (const auto& p : vac_basis)
            if (pick(rng)) v.terms[p] = RatFunc(BigRat(coef(rng)));
        if (v.terms.empty()) v.terms[vac_basis.empty() ? Partition{} : vac_basis[0]] = RatFunc(1);

        PrimaryVector<RatFunc> w;
        w.weight = BigRat(coef(rng), 3);
        w.level = level;
        for (const auto& p : fock_basis(level, 1))
            if (pick(rng)) w.terms[p] = RatFunc(BigRat(coef(rng)));
        if (w.terms.empty()) w.terms[Partition{}] = RatFunc(1);

        for (long m = -3; m <= 3; ++m)
            for (long n = -3; n <= 3; ++n) {
                check_bracket(v, m, n);
                check_bracket(w, m, n);
            }
    }
}

TEST_CASE("Gram matrices: fixtures, symmetry, Kac roots") {
    const auto& g0 = gram_matrix(0);
    REQUIRE(g0.rows() == 1);
    CHECK(g0.at(0, 0) == UniPoly(1));

    const auto& g2 = gram_matrix(2);
    REQUIRE(g2.rows() == 1);
    CHECK(g2.at(0, 0) == UniPoly::variable().scaled(BigRat(1, 2)));

    // Level 4 in basis {[4], [2,2]}.
    const auto& g4 = gram_matrix(4);
    const UniPoly c = UniPoly::variable();
    REQUIRE(g4.rows() == 2);
    CHECK(g4.at(0, 0) == c.scaled(BigRat(5)));
    CHECK(g4.at(0, 1) == c.scaled(BigRat(3)));
    CHECK(g4.at(1, 1) == (c * c + c.scaled(BigRat(8))).scaled(BigRat(1, 2)));
    auto roots4 = rational_roots(determinant(g4));
    CHECK(roots4 == std::vector<BigRat>{BigRat(-22, 5), BigRat(0), BigRat(0)});

    // Symmetry, recomputed independently of the mirrored fill.
    for (int level = 2; level <= 6; ++level) {
        const auto basis = fock_basis(level, 2);
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                const RatFunc direct = fock_pairing(basis[i], unit_vac(level, basis[j]), cvar);
                CHECK(direct == RatFunc(gram_matrix(level).at(i, j)));
            }
    }

    // Rational roots of the determinant are exactly the c_{p,q} with (p-1)(q-1) <= level.
    for (int level = 2; level <= 8; ++level) {
        std::set<BigRat> expected;
        for (long p = 2; p <= 9; ++p)
            for (long q = 2; q <= 9; ++q) {
                if (std::gcd(p, q) != 1 || (p - 1) * (q - 1) > level) continue;
                expected.insert(minimal_model(p, q).c);
            }
        const auto roots = rational_roots(determinant(gram_matrix(level)));
        const std::set<BigRat> found(roots.begin(), roots.end());
        CHECK(found == expected);
    }
}

TEST_CASE("Casimir pairing chains") {
    // Level 2, Fock [2]: l (-1)^l, with the floor convention for half-integer l.
    CHECK(casimir_pairing_vector(BigRat(1), 2) == std::vector<RatFunc>{RatFunc(-1)});
    CHECK(casimir_pairing_vector(BigRat(2), 2) == std::vector<RatFunc>{RatFunc(2)});
    CHECK(casimir_pairing_vector(BigRat(3), 2) == std::vector<RatFunc>{RatFunc(-3)});
    CHECK(casimir_pairing_vector(BigRat(3, 2), 2) == std::vector<RatFunc>{RatFunc(BigRat(-3, 2))});

    // Level 0: (-1)^l.
    CHECK(casimir_pairing_vector(BigRat(2), 0) == std::vector<RatFunc>{RatFunc(1)});
    CHECK(casimir_pairing_vector(BigRat(5, 2), 0) == std::vector<RatFunc>{RatFunc(1)});

    // Level 4 in basis {[4], [2,2]}: chain values 3l and (2+l)l, times (-1)^l.
    const auto v = casimir_pairing_vector(BigRat(2), 4);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == RatFunc(6));
    CHECK(v[1] == RatFunc(8));
}

TEST_CASE("Casimir vectors at levels 2 and 4") {
    const UniPoly c = UniPoly::variable();
    for (long l2 = 2; l2 <= 6; ++l2) {  // l = 1, 3/2, 2, 5/2, 3
        const BigRat l(l2, 2);
        const bool odd = (l2 / 2) % 2 == 1;
        const BigRat sign = odd ? BigRat(-1) : BigRat(1);

        const auto lam2 = casimir_fock(l, 2);
        REQUIRE(lam2.terms.size() == 1);
        // 2 l (-1)^l / c on [2].
        CHECK(lam2.terms.at({2}) == RatFunc(UniPoly(BigRat(2) * l * sign), c));

        const auto lam4 = casimir_fock(l, 4);
        // 2 (-1)^l l (5l+1) / (c(5c+22)) on [2,2]; 3 (-1)^l l (c-2l+4) / (c(5c+22)) on [4].
        const UniPoly den = c * UniPoly::from_coeffs({BigRat(22), BigRat(5)});
        const BigRat a22 = BigRat(2) * sign * l * (BigRat(5) * l + BigRat(1));
        CHECK(lam4.terms.at({2, 2}) == RatFunc(UniPoly(a22), den));
        const UniPoly num4 =
            (UniPoly::variable() + UniPoly(BigRat(4) - BigRat(2) * l)).scaled(BigRat(3) * sign * l);
        CHECK(lam4.terms.at({4}) == RatFunc(num4, den));
    }
}

TEST_CASE("Casimir vectors at odd levels") {
    const UniPoly c = UniPoly::variable();

    // Level 3 basis is {[3]}: chain value 2l(-1)^l against Gram [2c].
    for (long l2 = 2; l2 <= 5; ++l2) {
        const BigRat l(l2, 2);
        const BigRat sign = (l2 / 2) % 2 == 1 ? BigRat(-1) : BigRat(1);
        const auto lam3 = casimir_fock(l, 3);
        REQUIRE(lam3.terms.size() == 1);
        CHECK(lam3.terms.at({3}) == RatFunc(UniPoly(l * sign), c));
    }

    // Level 5, l = 2, basis {[5], [3,2]}: Gram [[10c, 4c], [4c, c(c+6)]] against
    // chain values [4l, (2+2l)l] solves to [4/(5c+22), 44/(c(5c+22))].
    const auto lam5 = casimir_fock(BigRat(2), 5);
    const UniPoly five_c_22 = UniPoly::from_coeffs({BigRat(22), BigRat(5)});
    CHECK(lam5.terms.at({5}) == RatFunc(UniPoly(BigRat(4)), five_c_22));
    CHECK(lam5.terms.at({3, 2}) == RatFunc(UniPoly(BigRat(44)), c * five_c_22));
}

TEST_CASE("Casimir round trip and leading L(-2)^k component") {
    // Re-pairing the solved vector reproduces the chain values exactly.
    for (const auto& l : {BigRat(2), BigRat(5, 2)}) {
        const int n = 6;
        const auto lam = casimir_fock(l, n);
        FockVector<RatFunc> v;
        v.level = n;
        v.terms = lam.terms;
        const auto basis = fock_basis(n, 2);
        const auto chain = casimir_pairing_vector(l, n);
        for (size_t i = 0; i < basis.size(); ++i)
            CHECK(fock_pairing(basis[i], v, cvar) == chain[i]);
    }

    // The all-twos partition never drops out of lambda(n).
    for (long l = 1; l <= 4; ++l)
        for (int n = 2; n <= 2 * l + 2; n += 2) {
            const auto lam = casimir_fock(BigRat(l), n);
            const Partition all_twos(static_cast<size_t>(n / 2), 2);
            REQUIRE(lam.terms.count(all_twos) == 1);
            CHECK(!lam.terms.at(all_twos).is_zero());
        }
}

TEST_CASE("Specialized Casimir solving matches the symbolic result") {
    const BigRat l(2);
    const BigRat cval(7);
    const auto sym = casimir_fock(l, 6);
    const auto num = casimir_fock_at(l, 6, cval);
    CHECK(num.terms.size() == sym.terms.size());
    for (const auto& [p, x] : sym.terms) CHECK(num.terms.at(p) == x.eval(cval));

    // The level-2 Gram matrix [c/2] degenerates at c = 0.
    CHECK_THROWS_AS(casimir_fock_at(BigRat(1), 2, BigRat(0)), SingularMatrix);
}

TEST_CASE("Minimal model data") {
    CHECK(minimal_model(2, 5).c == BigRat(-22, 5));
    CHECK(minimal_model(5, 2).c == BigRat(-22, 5));
    CHECK(minimal_model(3, 4).c == BigRat(1, 2));

    const auto m25 = minimal_model(2, 5);
    CHECK(m25.weights == std::vector<BigRat>{BigRat(-1, 5), BigRat(0)});

    const auto m310 = minimal_model(3, 10);
    CHECK(m310.c == BigRat(-44, 5));
    const std::set<BigRat> grid(m310.weights.begin(), m310.weights.end());
    CHECK(grid.count(BigRat(2)) == 1);
    CHECK(grid.count(BigRat(0)) == 1);
    CHECK(grid.count(BigRat(-1, 5)) == 1);
    CHECK(grid.count(BigRat(-2, 5)) == 1);

    const auto m34 = minimal_model(3, 4);
    CHECK(m34.weights == std::vector<BigRat>{BigRat(0), BigRat(1, 16), BigRat(1, 2)});

    CHECK_THROWS_AS(minimal_model(4, 6), NotCoprime);
    CHECK_THROWS_AS(minimal_model(1, 5), std::invalid_argument);
}

TEST_CASE("solve_poly_linear: exact back substitution on random systems") {
    std::mt19937 rng(2718);
    for (int it = 0; it < 60; ++it) {
        const size_t n = 1 + static_cast<size_t>(it % 5);
        Matrix<UniPoly> a(n, n);
        std::vector<UniPoly> b(n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) a.at(i, j) = rand_poly(rng, 3, 6);
            b[i] = rand_poly(rng, 3, 6);
        }
        try {
            const auto sol = solve_poly_linear(a, b);
            CHECK(sol.det == RatFunc(determinant(a)));
            for (size_t i = 0; i < n; ++i) {
                RatFunc acc(0);
                for (size_t j = 0; j < n; ++j) acc += RatFunc(a.at(i, j)) * sol.x[j];
                CHECK(acc == RatFunc(b[i]));
            }
        } catch (const SingularMatrix&) {
            CHECK(determinant(a).is_zero());
        }
    }
}
