#pragma once

#include <map>
#include <vector>

#include "mlde/linalg.hpp"
#include "mlde/rational.hpp"
#include "mlde/rational_function.hpp"

namespace mlde {

/// Exponents of the creation modes L(-n1)...L(-nk), descending.
using Partition = std::vector<int>;

/// Basis order: lexicographically descending partitions, e.g. [6], [4,2], [3,3], [2,2,2].
struct PartitionOrder {
    bool operator()(const Partition& a, const Partition& b) const {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

template <class F>
using FockTerms = std::map<Partition, F, PartitionOrder>;

/// All partitions of `level` with parts >= min_part (2 for vacuum descendants,
/// 1 for primary descendants), in PartitionOrder.
std::vector<Partition> fock_basis(int level, int min_part);

/// Element of the vacuum Fock space at a single level; partitions have parts >= 2.
template <class F>
struct FockVector {
    int level = 0;
    FockTerms<F> terms;
};

/// Element of an abstract lowest-weight module: partitions (parts >= 1) applied to a
/// primary of the given weight. The empty partition is the primary itself.
template <class F>
struct PrimaryVector {
    BigRat weight;
    int level = 0;
    FockTerms<F> terms;
};

namespace detail {

template <class F>
void prune_zeros(FockTerms<F>& t) {
    for (auto it = t.begin(); it != t.end();)
        it = it->second.is_zero() ? t.erase(it) : std::next(it);
}

/// Accumulates coeff * L(-n)|p> in normal order. vacuum selects L(-1)|0> = 0.
template <class F>
void accumulate_create(FockTerms<F>& out, int n, const Partition& p, const F& coeff, bool vacuum) {
    if (p.empty()) {
        if (n == 1 && vacuum) return;
        out[Partition{n}] += coeff;
        return;
    }
    const int q1 = p.front();
    if (n >= q1) {
        Partition np;
        np.reserve(p.size() + 1);
        np.push_back(n);
        np.insert(np.end(), p.begin(), p.end());
        out[np] += coeff;
        return;
    }
    // L(-n)L(-q1) = L(-q1)L(-n) + (q1 - n)L(-n-q1); no central term for n, q1 >= 1.
    const Partition rest(p.begin() + 1, p.end());
    FockTerms<F> inner;
    accumulate_create(inner, n, rest, coeff, vacuum);
    for (const auto& [ip, ic] : inner) accumulate_create(out, q1, ip, ic, vacuum);
    accumulate_create(out, n + q1, rest, coeff * F(BigRat(q1 - n)), vacuum);
}

/// Accumulates coeff * L(m)|p>, with |p> above the vacuum (weight = nullptr) or a
/// primary of the given weight. Commutes L(m) past the leading creation mode.
template <class F>
void accumulate_apply(FockTerms<F>& out, long m, const Partition& p, const F& coeff, const F& c,
                      const BigRat* weight) {
    if (m < 0) {
        accumulate_create(out, static_cast<int>(-m), p, coeff, weight == nullptr);
        return;
    }
    if (p.empty()) {
        if (m == 0 && weight != nullptr) out[p] += coeff * F(*weight);
        return;  // L(m)|0> = 0 for m >= 0; L(m)|primary> = 0 for m > 0
    }
    const int q1 = p.front();
    const Partition rest(p.begin() + 1, p.end());

    // L(-q1) [L(m) rest]
    FockTerms<F> inner;
    accumulate_apply(inner, m, rest, coeff, c, weight);
    for (const auto& [ip, ic] : inner) accumulate_create(out, q1, ip, ic, weight == nullptr);

    // [L(m), L(-q1)] rest = (m + q1) L(m - q1) rest + central term.
    const F f = coeff * F(BigRat(m + q1));
    const long md = m - q1;
    if (md > 0) {
        accumulate_apply(out, md, rest, f, c, weight);
    } else if (md == 0) {
        long lev = 0;
        for (int x : rest) lev += x;
        const BigRat eig = BigRat(lev) + (weight != nullptr ? *weight : BigRat(0));
        if (!eig.is_zero()) out[rest] += f * F(eig);
    } else {
        accumulate_create(out, static_cast<int>(-md), rest, f, weight == nullptr);
    }
    if (m == q1) out[rest] += coeff * c * F(BigRat(m * m * m - m, 12));
}

}  // namespace detail

/// Exact action of L(m) on a vacuum Fock vector over the given central charge.
template <class F>
FockVector<F> l_mode_apply(long m, const FockVector<F>& v, const F& c) {
    FockVector<F> r;
    r.level = v.level - static_cast<int>(m);
    if (r.level < 0) {
        r.level = 0;
        return r;
    }
    for (const auto& [p, a] : v.terms) detail::accumulate_apply(r.terms, m, p, a, c, nullptr);
    detail::prune_zeros(r.terms);
    return r;
}

/// Same action on a lowest-weight module vector: positive modes annihilate the
/// primary and L(0) adds the primary's weight to the level.
template <class F>
PrimaryVector<F> l_mode_apply(long m, const PrimaryVector<F>& v, const F& c) {
    PrimaryVector<F> r;
    r.weight = v.weight;
    r.level = v.level - static_cast<int>(m);
    if (r.level < 0) {
        r.level = 0;
        return r;
    }
    for (const auto& [p, a] : v.terms) detail::accumulate_apply(r.terms, m, p, a, c, &v.weight);
    detail::prune_zeros(r.terms);
    return r;
}

/// Convenience overloads over Q(c) with the symbolic central charge.
FockVector<RatFunc> l_mode_apply(long m, const FockVector<RatFunc>& v);
PrimaryVector<RatFunc> l_mode_apply(long m, const PrimaryVector<RatFunc>& v);

/// <bra, v> for a vacuum Fock basis bra: adjointness sends L(-n) to L(n), applied
/// largest mode first; the result is the vacuum coefficient.
template <class F>
F fock_pairing(const Partition& bra, FockVector<F> v, const F& c) {
    for (int part : bra) v = l_mode_apply(part, v, c);
    const auto it = v.terms.find(Partition{});
    return it == v.terms.end() ? F(0) : it->second;
}

/// Gram matrix of the vacuum Fock basis at a level; entries are polynomials in c.
/// Memoized; safe for concurrent readers.
const Matrix<UniPoly>& gram_matrix(int level);

/// <Fock_i, lambda(n)>/p_l for each level-n basis element: the scalar chain
/// L(m) lambda(k) = (k - m + l(m-1)) lambda(k-m), ending at lambda(0)/p_l = (-1)^l
/// (half-integer l uses the integer-part parity); any chain through lambda(1) is 0.
std::vector<RatFunc> casimir_pairing_vector(const BigRat& l, int n);

/// The level-n Casimir vector lambda(n)/p_l: the unique solution of
/// gram_matrix(n) x = casimir_pairing_vector(l, n) over Q(c).
FockVector<RatFunc> casimir_fock(const BigRat& l, int n);

/// Same vector with the central charge specialized first; throws SingularMatrix at
/// the finitely many c where the level-n Gram matrix degenerates.
FockVector<BigRat> casimir_fock_at(const BigRat& l, int n, const BigRat& c);

/// Central charge and lowest-weight grid of a (p,q) minimal model.
struct MinimalModelData {
    long p = 0;
    long q = 0;
    BigRat c;
    std::vector<BigRat> weights;  // sorted, deduplicated h_{r,s}
};

/// c_{p,q} = 1 - 6(p-q)^2/(pq) and the grid h_{r,s} with its (r,s) ~ (q-r,p-s)
/// identification. Requires coprime p, q >= 2.
MinimalModelData minimal_model(long p, long q);

}  // namespace mlde
