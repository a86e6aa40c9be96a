#pragma once

#include <utility>
#include <vector>

#include "mlde/linalg.hpp"
#include "mlde/rational.hpp"
#include "mlde/rational_function.hpp"
#include "mlde/vir.hpp"

namespace mlde {

/// Sphere two-point machinery: the correlator of two weight-l primaries with a
/// summed insertion of the weight-l basis and its dual reduces, by locality and
/// associativity, to one symmetric homogeneous polynomial
/// G(x, y) = sum_{r=0}^{4l} A_r x^{4l-r} y^r with A_r = A_{4l-r}.
/// All quantities here are per unit of the primary pairing <a, b>, and the
/// machinery is implemented for integer l only.

/// Coefficients A_0..A_{2l} of G; the upper half follows by symmetry.
struct CorrelatorPoly {
    int l = 0;
    std::vector<RatFunc> A;

    /// Symmetric access A_r = A_{4l-r} for any r in [0, 4l].
    const RatFunc& a(int r) const;
};

/// Virasoro expansion of b(2l-m-1)ubar, the weight-m state left when the dual
/// insertion contracts against the primary b. Requires 0 <= m < l so the state
/// lies below every primary and is a vacuum descendant; it is then recovered by
/// the same Gram solve as casimir_fock, with the pairing chain
/// L(n) b(s) = ((l-1)(n+1) - s) b(s+n) ending at b(2l-1)ubar = (-1)^l |0>.
FockVector<RatFunc> mu_fock(int l, int m);

/// Scalar through which the zero mode of a vacuum Fock vector acts on a primary
/// of weight l: each creation mode L(-n) of the vector peels off with the
/// factor (-1)^n ((n-1)l + k+1-n) while the mode index k drops by n, starting
/// from k = wt - 1 and ending on the identity mode of the vacuum.
RatFunc zero_mode_on_primary(const FockVector<RatFunc>& v, const BigRat& l);

/// Coefficient matrix of the even-order expansion constraints: entry (k-1, m-1)
/// is binom(m, 2k) + binom(-m, 2k) for k, m = 1..l, the coefficient of A_{2l-m}
/// in the 2k-th coefficient of the (x-y)/y expansion.
Matrix<BigRat> m_matrix(int l);

/// Unit-triangular factors with m_matrix(l) == L * U entrywise, hence det 1:
/// L_{ij} = binom(2i-j-1, j-1) for i >= j and U_{jk} = (k/j) binom(j+k-1, 2j-1)
/// for j <= k, indices from 1.
std::pair<Matrix<BigRat>, Matrix<BigRat>> lu_m(int l);

/// Builds G for a given value pl of the primary count: A_0..A_{l-1} come from
/// the mu_fock contractions, A_l..A_{2l} from the even-constraint system whose
/// right side carries pl through the Casimir zero modes.
CorrelatorPoly correlator_poly(int l, const RatFunc& pl);

/// Coefficients B_0..B_{n_max} of the (x-y)/y expansion of G:
/// B_n = sum_{r=0}^{4l} A_r binom(r-2l, n).
std::vector<RatFunc> b_sequence(const CorrelatorPoly& g, int n_max);

/// The primary count forced by closing the constraint system one order past
/// the solved correlator: the reconstructed B_{2l+2} is affine in pl while the
/// Casimir zero mode of the level-(2l+2) vector makes it proportional to pl,
/// and the unique solution is a rational function of c. Throws Inconsistent
/// when the two expressions cannot be equated for any pl.
RatFunc derive_pl(int l);

}  // namespace mlde
