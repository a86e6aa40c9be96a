#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlde/errors.hpp"
#include "mlde/qmod.hpp"
#include "mlde/qseries.hpp"
#include "mlde/rational.hpp"
#include "mlde/rational_function.hpp"
#include "mlde/vir.hpp"

namespace mlde {

/// Linear differential operator sum_j coef[j] * D^j in the Serre derivative D,
/// where D acts on a weight-2m argument as q d/dq + 2m E_2 and raises the weight
/// by 2. coef[j] is a modular form of weight total_weight - 2j, so every term
/// coef[j] D^j has the same total weight. For a fully assembled equation the
/// leading coefficient coef[order] has weight 0 and is constant in q.
template <class T>
struct ModLinOp {
    int total_weight = 0;
    bool twisted = false;
    std::vector<ModForm<T>> coef;  // coef[j] multiplies D^j

    int order() const { return static_cast<int>(coef.size()) - 1; }
    const ModForm<T>& leading() const { return coef.back(); }

    /// Weight-2m coefficient g_m = coef[order - m] of the assembled equation
    /// sum_m g_{order-m} D^m; g(0) is the leading, q-independent coefficient.
    const ModForm<T>& g(int m) const { return coef.at(static_cast<size_t>(order() - m)); }

    bool is_identically_zero() const {
        for (const auto& f : coef)
            if (!f.series.is_identically_zero()) return false;
        return true;
    }

    ModLinOp scaled(const T& s) const {
        ModLinOp r = *this;
        for (auto& f : r.coef) f = f.scaled(s);
        return r;
    }
};

/// The zero operator at a given total weight: order 0, one zero coefficient.
template <class T>
ModLinOp<T> zero_operator(int total_weight, bool twisted, int step_den, int slots) {
    ModLinOp<T> r;
    r.total_weight = total_weight;
    r.twisted = twisted;
    r.coef.push_back(ModForm<T>(QSeries<T>::zero(T(0), step_den, slots), total_weight));
    return r;
}

/// The identity operator: weight 0, coef[0] = 1.
template <class T>
ModLinOp<T> identity_operator(bool twisted, int step_den, int slots) {
    ModLinOp<T> r;
    r.total_weight = 0;
    r.twisted = twisted;
    r.coef.push_back(ModForm<T>(QSeries<T>::constant(T(1), step_den, slots), 0));
    return r;
}

template <class T>
ModLinOp<T> operator+(const ModLinOp<T>& a, const ModLinOp<T>& b) {
    if (a.total_weight != b.total_weight) throw std::domain_error("ModLinOp: weight mismatch in sum");
    if (a.twisted != b.twisted) throw std::domain_error("ModLinOp: sector mismatch in sum");
    const ModLinOp<T>* lo = &a;
    const ModLinOp<T>* hi = &b;
    if (lo->coef.size() > hi->coef.size()) std::swap(lo, hi);
    ModLinOp<T> r = *hi;
    for (size_t j = 0; j < lo->coef.size(); ++j) r.coef[j] = r.coef[j] + lo->coef[j];
    return r;
}

template <class T>
ModLinOp<T> operator-(const ModLinOp<T>& a, const ModLinOp<T>& b) {
    return a + b.scaled(T(-1));
}

/// Left multiplication by a modular form; shifts the total weight by the form's.
template <class T>
ModLinOp<T> operator*(const ModForm<T>& f, const ModLinOp<T>& op) {
    ModLinOp<T> r;
    r.total_weight = op.total_weight + f.weight;
    r.twisted = op.twisted;
    r.coef.reserve(op.coef.size());
    for (const auto& cj : op.coef) r.coef.push_back(ModForm<T>(f.series * cj.series, f.weight + cj.weight));
    return r;
}

/// Applies the operator to a weight-0 series (a character): sum_j coef[j] D^j z
/// with the ladder D^{j+1} z = (q d/dq + 2j E_2) D^j z.
template <class T>
QSeries<T> apply_operator(const ModLinOp<T>& op, const QSeries<T>& z) {
    QSeries<T> dz = z;
    QSeries<T> acc = op.coef[0].series * z;
    for (int j = 1; j < static_cast<int>(op.coef.size()); ++j) {
        dz = serre_step(dz, j - 1);
        acc = acc + op.coef[static_cast<size_t>(j)].series * dz;
    }
    return acc;
}

/// True when a and b differ by one overall scalar from the coefficient field:
/// same shape, and all pairwise coefficient cross products agree as series.
template <class T>
bool ops_equal_up_to_scale(const ModLinOp<T>& a, const ModLinOp<T>& b) {
    if (a.total_weight != b.total_weight || a.twisted != b.twisted) return false;
    if (a.coef.size() != b.coef.size()) return false;
    const size_t n = a.coef.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!agree(a.coef[i].series * b.coef[j].series, b.coef[i].series * a.coef[j].series)) return false;
    // Cross products miss a zero/nonzero disagreement in a single slot pattern
    // only when one operator is zero and the other is not.
    return a.is_identically_zero() == b.is_identically_zero();
}

/// Evaluates every coefficient at a concrete central charge.
ModLinOp<BigRat> specialize_operator(const ModLinOp<RatFunc>& op, const BigRat& c);

/// The operator O with Z_N(v, q) = O[Z_N(q)] for every simple ordinary module N,
/// built by structural recursion on the vacuum descendant v (square-bracket
/// modes, same Fock coefficients): stripping an outer L[-2] composes one Serre
/// derivative step plus E_{2s+2} corrections from L[2s]; stripping L[-k], k >= 3,
/// expands over E_{k+r} times L[r]. The reduction itself is independent of the
/// primary weight l and of the sector: `l` documents the calling context and
/// `twisted` only tags the result (the correction series stay untwisted because
/// the conformal vector has even parity). Coefficient windows reach q^K.
ModLinOp<RatFunc> descendant_operator(const FockVector<RatFunc>& v, const BigRat& l, bool twisted,
                                      int K = kDefaultTruncation);

/// descendant_operator applied to the normalized grade-n Casimir vector
/// lambda(n)/p_l. Grade 0 gives the scalar (-1)^floor(l), grade 2 gives
/// (2l(-1)^floor(l)/c) D; every odd-level vacuum descendant reduces to the zero
/// operator, so every odd grade n gives the zero operator as well.
ModLinOp<RatFunc> casimir_operator(const BigRat& l, int n, bool twisted, int K = kDefaultTruncation);

/// The two-point route to grade n: the moment expansion of the pair correlation
/// kernel expresses the grade-n Casimir through grades 2l-1 and below, for n > 2l:
///   sum_{m=0}^{2l-1} (-1)^{m+1} binom(n-2l+m, m) E_{n-2l+m+1} casimir_operator(l, 2l-1-m)
/// with untwisted E, or E[1,-1] throughout in the twisted sector. Both routes
/// compute the same one-point function on actual module characters, so at grades
/// of the wrong parity (where every constituent vanishes) it equals
/// casimir_operator(l, n) as an operator, and at the first grade of matching
/// parity past 2l the difference casimir_operator(l, n) - casimir_descent(l, n)
/// is precisely the assembled equation annihilating those characters.
ModLinOp<RatFunc> casimir_descent(const BigRat& l, int n, bool twisted, int K = kDefaultTruncation);

/// The order-(l+1) equation annihilating every simple-module character of an
/// exceptional vertex operator algebra with lowest primary weight l:
///   casimir_operator(l, 2l+2) - sum_{k=0}^{l-1} binom(2l-2k+1, 2) E_{2l-2k+2} casimir_operator(l, 2k),
/// normalized so the coefficients are coprime polynomials in c with a positive
/// leading coefficient on the q-independent leading term. Throws Degenerate if
/// that leading term is identically zero. Results are cached on disk when a
/// cache directory is configured.
ModLinOp<RatFunc> assemble_mlde(long l, int K = kDefaultTruncation);

/// The order-(l+1/2) twisted analogue for half-integer lowest weight l:
///   casimir_operator(l, 2l+1) + 2 sum_{r=0}^{l-1/2} (l-r) E_{2(l-r)+1}[1,-1] casimir_operator(l, 2r),
/// normalized the same way; all indices 2(l-r)+1 are even. The solutions are
/// series in q^{1/2}, and the stored coefficient series use the half-step grid.
ModLinOp<RatFunc> assemble_tmlde(const BigRat& l, int K = kDefaultTruncation);

/// Same assemblies with the central charge specialized before any linear solve;
/// much faster at large l. Throws SingularMatrix at the finitely many c where a
/// Casimir Gram matrix degenerates, Degenerate if the leading coefficient
/// vanishes at this c. The result is normalized to leading coefficient 1.
ModLinOp<BigRat> assemble_mlde_at(long l, const BigRat& c, int K = kDefaultTruncation);
ModLinOp<BigRat> assemble_tmlde_at(const BigRat& l, const BigRat& c, int K = kDefaultTruncation);

/// Canonical scale: clears all coefficient denominators, divides by the common
/// polynomial factor, and fixes the rational scale so the leading coefficient
/// is a primitive integer polynomial in c with positive leading coefficient.
/// Throws Degenerate when the leading coefficient is identically zero.
ModLinOp<RatFunc> normalized(ModLinOp<RatFunc> op);

/// Specialized form: divides by the leading constant (so the leading
/// coefficient becomes 1); throws Degenerate when it is zero.
ModLinOp<BigRat> normalized(ModLinOp<BigRat> op);

/// One power of one Eisenstein generator: E_n (untwisted) or E_n[1,-1] (twisted).
struct EisFactor {
    int n = 0;
    bool twisted = false;
    int power = 1;

    bool operator==(const EisFactor&) const = default;
};

/// coeff(c) times a product of Eisenstein generators.
struct EisTerm {
    RatFunc coeff;
    std::vector<EisFactor> factors;  // empty product = the constant form 1
};

/// Writes a modular-form coefficient as a polynomial in the Eisenstein
/// generators (E4, E6, and in the twisted ring also E_{2k}[1,-1] up to the
/// form's weight) with rational-function coefficients. Returns nullopt when the
/// series does not lie in that ring at the available window (e.g. anything
/// carrying a bare E_2). The fit uses a fixed window so the answer does not
/// depend on K once K >= 25.
std::optional<std::vector<EisTerm>> eisenstein_expansion(const ModForm<RatFunc>& f, bool twisted_ring);

/// Human-readable equation, weight-ordered: leading D-power first, each
/// coefficient in Eisenstein-generator form when possible, raw series otherwise.
std::string operator_to_string(const ModLinOp<RatFunc>& op);

/// Directory for the assembled-operator disk cache. An explicit set overrides
/// the MLDE_CACHE_DIR environment variable; empty string disables caching.
void set_operator_cache_dir(std::string dir);
std::string operator_cache_dir();

/// Serialized form of an assembled operator (see docs/cache-format.md): every
/// exponent an exact fraction string, every rational an integer-pair string.
std::string operator_to_json(const ModLinOp<RatFunc>& op, const BigRat& l, int K);
std::optional<ModLinOp<RatFunc>> operator_from_json(const std::string& text, const BigRat& l, bool twisted,
                                                    int K);

}  // namespace mlde
