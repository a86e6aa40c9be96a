#pragma once

#include <map>
#include <vector>

#include "mlde/polynomial.hpp"
#include "mlde/qseries.hpp"
#include "mlde/rational.hpp"
#include "mlde/rational_function.hpp"
#include "mlde/zhu.hpp"

namespace mlde {

/// Polynomial in the leading exponent x of a power-series ansatz q^x(a_0 + a_1 q^(1/s) + ...).
/// Substituting q^x into the operator and reading off the lowest q-coefficient gives
///   I(x) = sum_j c_j(q=0) prod_{s=0}^{j-1} (x - s/6),
/// where c_j multiplies the j-th derivative power; the roots of I are the allowed
/// leading exponents, and I(x + n/s) is the factor multiplying a_n in the
/// coefficient recurrence at step n.
template <class F>
struct IndicialPoly {
    std::vector<F> coef;  // coef[i] multiplies x^i

    int degree() const {
        for (int i = static_cast<int>(coef.size()); i-- > 0;)
            if (!detail::value_is_zero(coef[static_cast<size_t>(i)])) return i;
        return -1;
    }

    /// Horner evaluation at x.
    F operator()(const F& x) const {
        F acc(0);
        for (size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
        return acc;
    }
};

/// Indicial polynomial of an operator; the degree equals the operator order
/// whenever the leading coefficient has a nonzero constant term (always true
/// after canonical normalization). Throws Degenerate when the leading
/// coefficient vanishes identically.
IndicialPoly<RatFunc> indicial(const ModLinOp<RatFunc>& op);
IndicialPoly<BigRat> indicial(const ModLinOp<BigRat>& op);

/// Symbolic indicial polynomial evaluated at a concrete central charge.
IndicialPoly<BigRat> specialize_indicial(const IndicialPoly<RatFunc>& ip, const BigRat& c);

/// The same coefficients as a dense univariate polynomial in x.
UniPoly indicial_unipoly(const IndicialPoly<BigRat>& ip);

/// Rational roots of a specialized indicial polynomial, ascending with multiplicity.
std::vector<BigRat> rational_indicial_roots(const IndicialPoly<BigRat>& ip);

/// Pure power-series solution q^x (a_0 + a_1 q^(1/s) + ...) of a specialized operator.
struct SeriesSolution {
    BigRat root_x;           // leading exponent
    BigRat h;                // conformal weight: root_x + c/24
    QSeries<BigRat> coeffs;  // offset root_x, on the operator's exponent grid
    bool resonant = false;   // some recurrence step had a vanishing indicial factor
    BigRat normalization;    // leading coefficient a_0 (fixed to 1)
};

/// Frobenius solution of `op` (already specialized at central charge c, which is
/// passed only to report h = x + c/24) from the indicial root x, carried `terms`
/// grid steps past the leading exponent. Step n divides by I(x + n/s); when that
/// factor vanishes and the accumulated right-hand side vanishes too, the free
/// coefficient is pinned to 0 and the solution is marked resonant, while a
/// nonzero right-hand side throws ResonantObstruction. Requires x to be an
/// indicial root and every operator coefficient to cover the requested window.
SeriesSolution solve_at(const ModLinOp<BigRat>& op, const BigRat& c, const BigRat& x, int terms);

/// Graded dimensions of the would-be algebra as rational functions of the
/// central charge, with primary-state counts split off grade by grade.
struct DimensionProfile {
    BigRat l;                           // weight of the first primary beyond the stress tensor
    int step_den = 1;                   // exponent grid (2 for a super trace)
    std::vector<RatFunc> dims;          // dims[i] at grade i/step_den; a super trace stores sign-weighted values
    std::map<BigRat, RatFunc> p_funcs;  // grade -> primary count (sign-weighted on the half grid)

    /// The stored coefficients as a series with leading exponent -c/24.
    QSeries<RatFunc> trace() const;
};

/// Unique power-series solution of the operator with vacuum-character leading
/// behavior, over Q(c). The recurrence starts at x = -c/24 with a_0 = 1; the
/// derived grades below l must reproduce the generic vacuum dimensions
/// (partition counts with parts >= 2; zero at half-integer grades), else
/// Inconsistent. `super_trace` selects the half-integer grid of a sign-weighted
/// trace and must match the operator's sector. Primary counts are extracted
/// triangularly: each grade subtracts one generic highest-weight module
/// (unrestricted partition counts, integer steps) per primary already seen.
/// Throws ResonantSymbolic if a recurrence factor is the zero rational function.
DimensionProfile solve_symbolic(const ModLinOp<RatFunc>& op, const BigRat& l, bool super_trace, int terms);

/// One scanned grade m of the leading-exponent family x = m - c/24.
struct RootConditionEntry {
    BigRat m;
    bool is_root;  // x = m - c/24 solves the indicial polynomial identically in c
};

/// Scan of indicial roots of the special form x = m - c/24 over grid grades
/// m in [0, m_max]. Uniqueness of the vacuum-normalized solution requires every
/// such root to have m < l; entries with m >= l land in `violations`. The scan
/// window is a diagnostic, not a proof: roots beyond m_max go unreported.
struct RootConditionReport {
    std::vector<RootConditionEntry> entries;
    std::vector<BigRat> violations;
};

RootConditionReport root_condition_report(const ModLinOp<RatFunc>& op, const BigRat& l, const BigRat& m_max);
/// Same, with the scan window defaulted to m_max = l + 8.
RootConditionReport root_condition_report(const ModLinOp<RatFunc>& op, const BigRat& l);

/// Root pairs (lower, upper) from a sorted root list whose gap is a positive
/// whole number of grid steps; the coefficient recurrence started at `lower`
/// is resonant exactly at these gaps.
struct ResonancePair {
    BigRat lower;
    BigRat upper;
    BigRat gap;
};
std::vector<ResonancePair> resonant_pairs(const std::vector<BigRat>& roots, int step_den);

}  // namespace mlde
