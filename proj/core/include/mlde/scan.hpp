#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mlde/qmod.hpp"
#include "mlde/qseries.hpp"
#include "mlde/rational.hpp"

namespace mlde {

/// Known construction families used to annotate scan output.
enum class CatalogKind { AD, W3k };

/// A predicted (c, module weights) row from a known construction.
struct CatalogEntry {
    CatalogKind kind = CatalogKind::AD;
    long p = 0;  // minimal-model pair (AD rows)
    long q = 0;
    BigRat k;  // weight parameter, extension field of weight 3k (W3k rows)
    BigRat c;
    BigRat l;
    std::vector<BigRat> h_list;  // ascending; {0} when only the vacuum is predicted
};

struct ScanFlags {
    bool g0_nonzero = false;             // leading coefficient survived specialization
    bool resonances = false;             // recurrence pinned a free coefficient, or root gaps allow it
    bool all_dims_nonneg_integer = false;
    bool odd_pl_irreducible = false;     // an odd primary count cannot split into conjugate pairs
    std::optional<std::pair<long, long>> ad_type_match;
    std::optional<BigRat> w3k_match;
};

/// One surviving central charge: the specialized equation admits a vacuum-type
/// solution with nonnegative integral graded dimensions and exactly p new
/// primaries at grade l.
struct ScanCandidate {
    BigRat c;
    BigInt p;                            // primary count at grade l, positive
    std::vector<BigRat> indicial_roots;  // rational roots, ascending with multiplicity
    std::vector<BigRat> h_list;          // root + c/24, distinct, ascending
    std::vector<BigInt> dims;            // graded dimensions, slot i at grade i/step_den
    int step_den = 1;
    ScanFlags flags;
};

/// Classification scan at weight l (integer or half-integer, l >= 1/2): every
/// rational central charge where the weight-l primary-count function takes a
/// nonzero integer value of magnitude at most max_dim, kept when the
/// specialized equation solves from the vacuum exponent with nonnegative
/// integral graded dimensions through `depth` whole q-powers (default
/// floor(l) + 4) and the grade-l count matches the sieve value. Completeness:
/// a qualifying c = u/v in lowest terms has v dividing the cleared leading
/// coefficient of the count function, and |c| is bounded by explicit
/// coefficient estimates, so the enumeration misses nothing. Ascending in c.
/// Throws Degenerate when a candidate annihilates the leading coefficient.
std::vector<ScanCandidate> scan(const BigRat& l, long max_dim, int depth = 0);

/// Rows built from Virasoro minimal models: every coprime pair
/// 3 <= p <= q <= pq_bound with (p - 2)(q - 2) = 4l, where the grid weight
/// h_{1,p-1} equals l and the vacuum module extends by that field. A weight
/// survives in the extended module list when fusion with the weight-l field
/// shifts it by an element of l + Z; each surviving fusion orbit contributes
/// its smaller weight. Entries ascend in c.
std::vector<CatalogEntry> ad_catalog(const BigRat& l, long pq_bound);

/// The weight-3k extension family at central charge 1 - 24k: defined for
/// integer k >= 2 (integer grade grid) and half-integer k >= 3/2 (half grid),
/// empty otherwise. Only the vacuum weight is predicted.
std::vector<CatalogEntry> w3k_catalog(const BigRat& l);

/// Vacuum partition function of the weight-3k family,
///   (1 / (2 eta)) sum_{n in Z} (q^{n^2 k} - q^{n^2 (k + 1)}),
/// with leading exponent k - 1/24 = -c/24, carried K whole q-powers past the
/// leading term. Requires k > 0 on the integer or half-integer grid.
QSeries<BigRat> w3k_partition(const BigRat& k, int K = kDefaultTruncation);

/// Mark every candidate that reproduces a catalog row exactly: equal central
/// charge and predicted weights contained in the candidate's h_list. Also
/// refreshes the odd-count irreducibility flag.
void annotate(std::vector<ScanCandidate>& candidates, const std::vector<CatalogEntry>& catalogs);

}  // namespace mlde
