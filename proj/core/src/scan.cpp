#include "mlde/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "mlde/errors.hpp"
#include "mlde/frob.hpp"
#include "mlde/vir.hpp"
#include "mlde/zhu.hpp"

namespace mlde {
namespace {

long floor_long(const BigRat& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q.get_si();
}

long ceil_long(const BigRat& x) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q.get_si();
}

// ---------------------------------------------------------------------------
// Modular sieve for the rational values of the primary-count function.
//
// Writing p(c) = A(c)/B(c) with integer-coefficient A, B and
// deg A = deg B + 1, a value p(u/v) in Z at a reduced fraction u/v forces
// v | lc(A): clearing v^{deg A} from A(u/v) = p * v * (v^{deg B} B(u/v))
// leaves v dividing lc(A) u^{deg A}. Candidate pairs are therefore bounded to
// divisors v of lc(A) and |u| <= v * cmax, and each pair is tested modulo the
// Mersenne prime 2^61 - 1; surviving pairs are re-verified exactly, so a
// false modular positive costs a recheck and a false negative is impossible
// (any true value |p| <= max_dim < P/2 lifts to itself).
// ---------------------------------------------------------------------------

constexpr std::uint64_t kP = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t fold61(unsigned __int128 t) {
    std::uint64_t r = static_cast<std::uint64_t>(t & kP) + static_cast<std::uint64_t>(t >> 61);
    r = (r & kP) + (r >> 61);
    return r >= kP ? r - kP : r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return fold61(static_cast<unsigned __int128>(a) * b);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e != 0; e >>= 1) {
        if (e & 1) r = mulmod(r, b);
        b = mulmod(b, b);
    }
    return r;
}

inline std::uint64_t mod_of(const BigInt& z) { return mpz_fdiv_ui(z.get_mpz_t(), kP); }

/// Integer-cleared numerator and denominator of the count function, with the
/// window bound on |c| past which |p(c)| > max_dim.
struct SieveData {
    std::vector<BigInt> A;  // deg = da, A[da] > 0 after sign normalization
    std::vector<BigInt> B;
    long lc_a = 0;
    long cmax = 0;
};

SieveData clear_count_function(const RatFunc& pf, long max_dim) {
    const UniPoly& an = pf.num();
    const UniPoly& bd = pf.den();
    const int da = an.degree();
    const int db = bd.degree();
    if (da != db + 1)
        throw std::invalid_argument("scan: count function is not a degree-one family in c");

    BigInt d(1);
    const auto fold_denoms = [&d](const UniPoly& p) {
        for (const BigRat& cf : p.coeffs()) d = d / int_gcd(d, cf.den()) * cf.den();
    };
    fold_denoms(an);
    fold_denoms(bd);

    SieveData s;
    s.A.reserve(static_cast<size_t>(da) + 1);
    s.B.reserve(static_cast<size_t>(db) + 1);
    for (int i = 0; i <= da; ++i) s.A.push_back((an.coeff(i) * BigRat(d)).num());
    for (int j = 0; j <= db; ++j) s.B.push_back((bd.coeff(j) * BigRat(d)).num());

    // Shared content is scan-invariant; removing it shrinks the divisor set.
    BigInt g(0);
    for (const BigInt& x : s.A) g = int_gcd(g, x);
    for (const BigInt& x : s.B) g = int_gcd(g, x);
    for (BigInt& x : s.A) x /= g;
    for (BigInt& x : s.B) x /= g;
    if (s.A[static_cast<size_t>(da)] < 0)
        for (BigInt& x : s.A) x = -x;

    const BigInt& lca = s.A[static_cast<size_t>(da)];
    if (!lca.fits_slong_p() || lca.get_si() > (1L << 40))
        throw std::invalid_argument("scan: count function leading coefficient too large");
    s.lc_a = lca.get_si();

    // Window bound by scaled dominance. For integer R >= 1 and |c| >= R,
    //   |A(c)| >= |c|^da (lc_a - sum_{i<da} |A_i| / R^(da-i))
    //   |B(c)| <= |c|^db  sum_j |B_j| / R^(db-j)
    // so R * num_lower(R) > N * SB(R) certifies |p(c)| > N on |c| >= R. The
    // predicate is monotone in R and holds for every R above
    // N lc_b / lc_a + SA/lc_a + (SB - lc_b)/lc_b + 2, so doubling terminates;
    // a bisection then finds the smallest certified R. This tracks the actual
    // root layout of A and B far more tightly than the first-order bound when
    // B has large low-order coefficients.
    const BigRat n(max_dim);
    const auto certified = [&](long r) {
        const BigRat rr(r);
        BigRat head(0);  // sum_{i<da} |A_i| / R^(da-i), Horner with |A_0| innermost
        for (int i = 0; i < da; ++i)
            head = (head + BigRat(abs(s.A[static_cast<size_t>(i)]))) / rr;
        const BigRat num_lower = BigRat(s.lc_a) - head;
        if (num_lower.sign() <= 0) return false;
        BigRat sbr(0);  // sum_j |B_j| / R^(db-j)
        for (int j = 0; j <= db; ++j)
            sbr = j == db ? sbr + BigRat(abs(s.B[static_cast<size_t>(j)]))
                          : (sbr + BigRat(abs(s.B[static_cast<size_t>(j)]))) / rr;
        return rr * num_lower > n * sbr;
    };
    long hi = 1;
    while (!certified(hi)) {
        if (hi > (1L << 50))
            throw std::invalid_argument("scan: window too large for the requested max_dim");
        hi *= 2;
    }
    long lo = hi / 2;  // lo == 0 when hi == 1; every candidate R stays >= 1
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (certified(mid) ? hi : lo) = mid;
    }
    s.cmax = hi;
    return s;
}

std::vector<long> divisors_of(long n) {
    std::vector<long> divs;
    for (long i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        divs.push_back(i);
        if (i != n / i) divs.push_back(n / i);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Per-denominator sieve tables: Horner coefficients of
///   A_v(u) = v^da A(u/v)  and  Bt_v(u) = v^da B(u/v)
/// modulo kP, plus a coprimality wheel modulo rad(v).
struct DenomJob {
    long v = 0;
    long radius = 0;  // |u| <= radius
    std::vector<std::uint64_t> a_mod;
    std::vector<std::uint64_t> b_mod;
    long rad = 1;
    std::vector<std::uint8_t> coprime;  // index u mod rad
};

struct SievePair {
    long u;
    long v;
};

DenomJob make_job(const SieveData& s, long v, long cmax) {
    DenomJob job;
    job.v = v;
    if (cmax > ((1L << 61) - 2) / v)
        throw std::invalid_argument("scan: window too large for the requested max_dim");
    job.radius = v * cmax;
    const int da = static_cast<int>(s.A.size()) - 1;
    const std::uint64_t vm = static_cast<std::uint64_t>(v % static_cast<long>(kP));
    job.a_mod.resize(s.A.size());
    job.b_mod.resize(s.B.size());
    for (size_t i = 0; i < s.A.size(); ++i)
        job.a_mod[i] = mulmod(mod_of(s.A[i]), powmod(vm, static_cast<std::uint64_t>(da) - i));
    for (size_t j = 0; j < s.B.size(); ++j)
        job.b_mod[j] = mulmod(mod_of(s.B[j]), powmod(vm, static_cast<std::uint64_t>(da) - j));

    long rad = 1;
    long rest = v;
    for (long f = 2; f * f <= rest; ++f) {
        if (rest % f != 0) continue;
        rad *= f;
        while (rest % f == 0) rest /= f;
    }
    rad *= rest > 1 ? rest : 1;
    job.rad = rad;
    job.coprime.assign(static_cast<size_t>(rad), 1);
    if (rad > 1)
        for (long r = 0; r < rad; ++r)
            if (std::gcd(r, rad) != 1) job.coprime[static_cast<size_t>(r)] = 0;
    return job;
}

/// One block [lo, hi) of numerators for a fixed denominator: evaluates both
/// polynomials modulo kP, batch-inverts the denominators, and records every u
/// whose centered quotient has magnitude <= max_dim. Zero denominators are
/// recorded unconditionally; the exact recheck disposes of them.
void sieve_block(const DenomJob& job, long lo, long hi, long max_dim, std::vector<SievePair>& out) {
    constexpr size_t kBatch = 1024;
    std::uint64_t a_val[kBatch], b_val[kBatch], prefix[kBatch];
    long u_val[kBatch];
    size_t n = 0;
    const size_t da = job.a_mod.size() - 1;
    const size_t db = job.b_mod.size() - 1;
    const auto flush = [&]() {
        std::uint64_t acc = 1;
        for (size_t i = 0; i < n; ++i) {
            acc = mulmod(acc, b_val[i] != 0 ? b_val[i] : 1);
            prefix[i] = acc;
        }
        std::uint64_t inv = powmod(acc, kP - 2);
        for (size_t i = n; i-- > 0;) {
            if (b_val[i] == 0) {
                out.push_back({u_val[i], job.v});
                continue;
            }
            const std::uint64_t ib = mulmod(inv, i > 0 ? prefix[i - 1] : 1);
            inv = mulmod(inv, b_val[i]);
            const std::uint64_t ph = mulmod(a_val[i], ib);
            if (ph == 0) continue;
            const std::uint64_t mag = ph <= kP / 2 ? ph : kP - ph;
            if (mag <= static_cast<std::uint64_t>(max_dim)) out.push_back({u_val[i], job.v});
        }
        n = 0;
    };

    long r = ((lo % job.rad) + job.rad) % job.rad;
    for (long u = lo; u < hi; ++u) {
        const bool keep = job.rad == 1 || job.coprime[static_cast<size_t>(r)] != 0;
        if (++r == job.rad) r = 0;
        if (!keep) continue;
        const std::uint64_t um = static_cast<std::uint64_t>(u >= 0 ? u : u + static_cast<long>(kP));
        std::uint64_t a = job.a_mod[da];
        for (size_t i = da; i-- > 0;)
            a = fold61(static_cast<unsigned __int128>(a) * um + job.a_mod[i]);
        std::uint64_t b = job.b_mod[db];
        for (size_t j = db; j-- > 0;)
            b = fold61(static_cast<unsigned __int128>(b) * um + job.b_mod[j]);
        a_val[n] = a;
        b_val[n] = b;
        u_val[n] = u;
        if (++n == kBatch) flush();
    }
    flush();
}

std::vector<SievePair> run_sieve(const SieveData& s, long max_dim) {
    std::vector<DenomJob> jobs;
    for (long v : divisors_of(s.lc_a)) jobs.push_back(make_job(s, v, s.cmax));

    struct Task {
        size_t job;
        long lo, hi;
    };
    constexpr long kBlock = 1L << 21;
    std::vector<Task> tasks;
    for (size_t j = 0; j < jobs.size(); ++j)
        for (long lo = -jobs[j].radius; lo <= jobs[j].radius; lo += kBlock)
            tasks.push_back({j, lo, std::min(lo + kBlock, jobs[j].radius + 1)});

    std::vector<SievePair> hits;
    std::atomic<size_t> next{0};
    std::mutex merge;
    const auto worker = [&]() {
        std::vector<SievePair> local;
        for (;;) {
            const size_t t = next.fetch_add(1);
            if (t >= tasks.size()) break;
            sieve_block(jobs[tasks[t].job], tasks[t].lo, tasks[t].hi, max_dim, local);
        }
        const std::lock_guard<std::mutex> lock(merge);
        hits.insert(hits.end(), local.begin(), local.end());
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t nt = std::min<size_t>(std::min<size_t>(hw, 16), tasks.size());
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return hits;
}

// ---------------------------------------------------------------------------
// Candidate filter: solve the specialized equation from the vacuum exponent.
// ---------------------------------------------------------------------------

/// Partitions of the grade into parts >= 2: the generic vacuum dimension the
/// grade-l coefficient carries on top of the new primaries.
BigRat vacuum_dimension(const BigRat& grade) {
    if (!grade.is_integer()) return BigRat(0);
    return BigRat(static_cast<long>(fock_basis(static_cast<int>(grade.num().get_si()), 2).size()));
}

std::optional<ScanCandidate> filter_candidate(const ModLinOp<RatFunc>& op_sym, const BigRat& c,
                                              const BigRat& l, int step_den, int depth,
                                              const BigRat& count) {
    ModLinOp<BigRat> op;
    try {
        op = specialize_operator(op_sym, c);
    } catch (const std::domain_error&) {
        throw Degenerate("scan: equation family undefined at c = " + c.to_string());
    }
    const auto ip = indicial(op);  // Degenerate propagates to the caller
    const auto roots = rational_indicial_roots(ip);
    const BigRat x0 = -c / BigRat(24);
    if (std::find(roots.begin(), roots.end(), x0) == roots.end()) return std::nullopt;

    SeriesSolution sol;
    try {
        sol = solve_at(op, c, x0, depth * step_den);
    } catch (const ResonantObstruction&) {
        return std::nullopt;
    }

    ScanCandidate cand;
    cand.c = c;
    cand.step_den = step_den;
    cand.indicial_roots = roots;
    for (const BigRat& r : roots) {
        const BigRat h = r - x0;
        if (cand.h_list.empty() || cand.h_list.back() != h) cand.h_list.push_back(h);
    }

    // Graded dimensions: a super trace weights grade n by (-1)^(2n).
    for (int i = 0; i <= depth * step_den; ++i) {
        const bool odd_grade = step_den == 2 && i % 2 == 1;
        const BigRat dim = odd_grade ? -sol.coeffs.slot(i) : sol.coeffs.slot(i);
        if (!dim.is_integer() || dim.sign() < 0) return std::nullopt;
        cand.dims.push_back(dim.num());
    }

    // The grade-l coefficient must be the sieve count on top of the generic
    // vacuum states; a sign-mismatched branch fails this and is discarded.
    const int grade_l = static_cast<int>((l * BigRat(step_den)).num().get_si());
    const BigRat fresh = BigRat(cand.dims[static_cast<size_t>(grade_l)]) - vacuum_dimension(l);
    if (fresh != count.abs()) return std::nullopt;

    cand.p = count.abs().num();
    cand.flags.g0_nonzero = true;
    cand.flags.all_dims_nonneg_integer = true;
    cand.flags.resonances = sol.resonant || !resonant_pairs(roots, step_den).empty();
    cand.flags.odd_pl_irreducible = mpz_odd_p(cand.p.get_mpz_t()) != 0;
    return cand;
}

BigRat minimal_model_weight(long p, long q, long r, long s) {
    const BigInt pr_qs = BigInt(p) * r - BigInt(q) * s;
    const BigInt p_q = BigInt(p) - q;
    return BigRat(pr_qs * pr_qs - p_q * p_q, BigInt(4) * p * q);
}

}  // namespace

std::vector<ScanCandidate> scan(const BigRat& l, long max_dim, int depth) {
    if (!(l * BigRat(2)).is_integer() || l < BigRat(1, 2))
        throw std::invalid_argument("scan: weight must be a half-integer >= 1/2");
    if (max_dim < 1) throw std::invalid_argument("scan: max_dim must be positive");
    const bool twisted = !l.is_integer();
    const int step_den = twisted ? 2 : 1;
    if (depth <= 0) depth = static_cast<int>(floor_long(l)) + 4;
    depth = std::max(depth, static_cast<int>(ceil_long(l)));

    const int window = depth + 2;
    const auto op_sym = twisted ? assemble_tmlde(l, window) : assemble_mlde(floor_long(l), window);
    const int grade_l = static_cast<int>((l * BigRat(step_den)).num().get_si());
    const auto profile = solve_symbolic(op_sym, l, twisted, grade_l);
    const RatFunc pf = profile.p_funcs.at(l);

    const SieveData data = clear_count_function(pf, max_dim);
    const std::vector<SievePair> hits = run_sieve(data, max_dim);

    std::map<BigRat, BigRat> verified;  // c -> exact signed count
    const BigRat n(max_dim);
    for (const SievePair& hit : hits) {
        const BigRat c(hit.u, hit.v);
        if (!pf.defined_at(c)) continue;
        const BigRat value = pf.eval(c);
        if (!value.is_integer() || value.is_zero() || value.abs() > n) continue;
        verified.emplace(c, value);
    }

    std::vector<ScanCandidate> out;
    for (const auto& [c, value] : verified) {
        auto cand = filter_candidate(op_sym, c, l, step_den, depth, value);
        if (cand) out.push_back(std::move(*cand));
    }
    return out;
}

std::vector<CatalogEntry> ad_catalog(const BigRat& l, long pq_bound) {
    if (!(l * BigRat(2)).is_integer() || l.sign() <= 0)
        throw std::invalid_argument("ad_catalog: weight must be a positive half-integer");
    const BigInt four_l = (l * BigRat(4)).num();
    if (!four_l.fits_slong_p()) throw std::invalid_argument("ad_catalog: weight too large");
    const long target = four_l.get_si();  // (p - 2)(q - 2)

    std::vector<CatalogEntry> entries;
    for (long p = 3; p <= pq_bound; ++p) {
        if (target % (p - 2) != 0) continue;
        const long q = target / (p - 2) + 2;
        if (q < p || q > pq_bound || std::gcd(p, q) != 1) continue;

        CatalogEntry e;
        e.kind = CatalogKind::AD;
        e.p = p;
        e.q = q;
        e.l = l;
        e.c = minimal_model(p, q).c;

        // Fields (r, s) modulo (r, s) ~ (q - r, p - s); fusion with the
        // weight-l field (1, p - 1) sends a class to (r, p - s). An orbit
        // survives when the two weights differ by an element of l + Z.
        const auto canon = [p, q](long r, long s) {
            const std::pair<long, long> a{r, s}, b{q - r, p - s};
            return a <= b ? a : b;
        };
        std::set<BigRat> weights;
        for (long r = 1; r < q; ++r) {
            for (long s = 1; s < p; ++s) {
                const auto rep = canon(r, s);
                if (rep != std::pair<long, long>{r, s}) continue;
                const auto img = canon(r, p - s);
                if (img < rep) continue;  // orbit handled from its smaller class
                const BigRat h1 = minimal_model_weight(p, q, rep.first, rep.second);
                const BigRat h2 = minimal_model_weight(p, q, img.first, img.second);
                if (!(h2 - h1 - l).is_integer()) continue;
                weights.insert(std::min(h1, h2));
            }
        }
        e.h_list.assign(weights.begin(), weights.end());
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.c < b.c; });
    return entries;
}

std::vector<CatalogEntry> w3k_catalog(const BigRat& l) {
    const BigRat k = l / BigRat(3);
    const bool integer_grid = k.is_integer() && k >= BigRat(2);
    const bool half_grid = !k.is_integer() && (k * BigRat(2)).is_integer() && k >= BigRat(3, 2);
    if (!integer_grid && !half_grid) return {};

    CatalogEntry e;
    e.kind = CatalogKind::W3k;
    e.k = k;
    e.l = l;
    e.c = BigRat(1) - BigRat(24) * k;
    e.h_list = {BigRat(0)};
    return {e};
}

QSeries<BigRat> w3k_partition(const BigRat& k, int K) {
    if (!(k * BigRat(2)).is_integer() || k.sign() <= 0)
        throw std::invalid_argument("w3k_partition: parameter must be a positive half-integer");
    const int step_den = k.is_integer() ? 1 : 2;
    const int slots = K * step_den + 1;

    // sum_{n in Z} (q^{n^2 k} - q^{n^2 (k+1)}) = 2 sum_{n >= 1} q^{n^2 k} (1 - q^{n^2}),
    // written relative to the leading exponent k.
    QSeries<BigRat> sum = QSeries<BigRat>::zero(k, step_den, slots);
    for (long n = 1;; ++n) {
        const BigRat lead = (BigRat(n) * BigRat(n) - BigRat(1)) * k;  // relative exponent
        const BigRat idx = lead * BigRat(step_den);
        if (idx >= BigRat(slots)) break;
        sum.slot(static_cast<int>(idx.num().get_si())) += BigRat(1);
        const BigRat idx2 = idx + BigRat(static_cast<long>(n) * n * step_den);
        if (idx2 < BigRat(slots)) sum.slot(static_cast<int>(idx2.num().get_si())) -= BigRat(1);
    }

    // 1/(2 eta) contributes q^{-1/24} / prod (1 - q^m) after the factor 2 above.
    const QSeries<BigRat> inv_eta = dedekind_eta(K + 2).inverse();
    return (sum * inv_eta).truncated(slots);
}

void annotate(std::vector<ScanCandidate>& candidates, const std::vector<CatalogEntry>& catalogs) {
    for (ScanCandidate& cand : candidates) {
        cand.flags.odd_pl_irreducible = mpz_odd_p(cand.p.get_mpz_t()) != 0;
        for (const CatalogEntry& entry : catalogs) {
            if (entry.c != cand.c) continue;
            const bool contained = std::all_of(
                entry.h_list.begin(), entry.h_list.end(), [&cand](const BigRat& h) {
                    return std::binary_search(cand.h_list.begin(), cand.h_list.end(), h);
                });
            if (!contained) continue;
            if (entry.kind == CatalogKind::AD)
                cand.flags.ad_type_match = std::make_pair(entry.p, entry.q);
            else
                cand.flags.w3k_match = entry.k;
        }
    }
}

}  // namespace mlde
