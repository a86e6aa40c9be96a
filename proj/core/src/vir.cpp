#include "mlde/vir.hpp"

#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "mlde/errors.hpp"

namespace mlde {

namespace {

void fill_partitions(int remaining, int max_part, int min_part, Partition& cur,
                     std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= min_part; --p) {
        cur.push_back(p);
        fill_partitions(remaining - p, p, min_part, cur, out);
        cur.pop_back();
    }
}

bool floor_is_odd(const BigRat& l) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), l.num().get_mpz_t(), l.den().get_mpz_t());
    return mpz_odd_p(q.get_mpz_t()) != 0;
}

}  // namespace

std::vector<Partition> fock_basis(int level, int min_part) {
    if (level < 0) throw std::invalid_argument("fock_basis: negative level");
    if (min_part < 1) throw std::invalid_argument("fock_basis: min_part must be >= 1");
    std::vector<Partition> out;
    Partition cur;
    fill_partitions(level, level, min_part, cur, out);
    return out;
}

FockVector<RatFunc> l_mode_apply(long m, const FockVector<RatFunc>& v) {
    return l_mode_apply(m, v, RatFunc::variable());
}

PrimaryVector<RatFunc> l_mode_apply(long m, const PrimaryVector<RatFunc>& v) {
    return l_mode_apply(m, v, RatFunc::variable());
}

const Matrix<UniPoly>& gram_matrix(int level) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const Matrix<UniPoly>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        const auto it = cache.find(level);
        if (it != cache.end()) return *it->second;
    }

    const auto basis = fock_basis(level, 2);
    const size_t n = basis.size();
    auto m = std::make_unique<Matrix<UniPoly>>(n, n);
    const RatFunc c = RatFunc::variable();
    for (size_t j = 0; j < n; ++j) {
        FockVector<RatFunc> unit;
        unit.level = level;
        unit.terms[basis[j]] = RatFunc(1);
        for (size_t i = 0; i <= j; ++i) {
            const RatFunc val = fock_pairing(basis[i], unit, c);
            if (!val.is_polynomial()) throw Error("gram_matrix: pairing produced a denominator");
            m->at(i, j) = val.num();
            m->at(j, i) = val.num();
        }
    }

    std::lock_guard<std::mutex> lock(mu);
    const auto [it, inserted] = cache.emplace(level, std::move(m));
    return *it->second;
}

std::vector<RatFunc> casimir_pairing_vector(const BigRat& l, int n) {
    if (n < 0) throw std::invalid_argument("casimir_pairing_vector: negative level");
    const BigRat sign = floor_is_odd(l) ? BigRat(-1) : BigRat(1);
    const auto basis = fock_basis(n, 2);
    std::vector<RatFunc> out;
    out.reserve(basis.size());
    for (const auto& p : basis) {
        BigRat val(1);
        long cur = n;
        for (const int m : p) {
            val *= BigRat(cur - m) + l * BigRat(m - 1);
            cur -= m;
            if (cur == 1) {  // the weight-1 Casimir vector vanishes
                val = BigRat(0);
                break;
            }
        }
        out.emplace_back(val * sign);
    }
    return out;
}

FockVector<RatFunc> casimir_fock(const BigRat& l, int n) {
    if (n < 0) throw std::invalid_argument("casimir_fock: negative level");

    static std::mutex mu;
    static std::map<std::pair<BigRat, int>, FockVector<RatFunc>> cache;
    const auto key = std::make_pair(l, n);
    {
        std::lock_guard<std::mutex> lock(mu);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const auto basis = fock_basis(n, 2);
    const auto pairing = casimir_pairing_vector(l, n);
    std::vector<UniPoly> rhs;
    rhs.reserve(pairing.size());
    for (const auto& v : pairing) rhs.emplace_back(v.to_rational());
    const auto sol = solve_poly_linear(gram_matrix(n), rhs);

    FockVector<RatFunc> out;
    out.level = n;
    for (size_t i = 0; i < basis.size(); ++i)
        if (!sol.x[i].is_zero()) out.terms[basis[i]] = sol.x[i];

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, out);
    return out;
}

FockVector<BigRat> casimir_fock_at(const BigRat& l, int n, const BigRat& c) {
    if (n < 0) throw std::invalid_argument("casimir_fock_at: negative level");
    const auto basis = fock_basis(n, 2);
    const auto pairing = casimir_pairing_vector(l, n);
    std::vector<BigRat> rhs;
    rhs.reserve(pairing.size());
    for (const auto& v : pairing) rhs.push_back(v.to_rational());
    const auto sol = solve_linear(eval_matrix(gram_matrix(n), c), rhs);

    FockVector<BigRat> out;
    out.level = n;
    for (size_t i = 0; i < basis.size(); ++i)
        if (!sol.x[i].is_zero()) out.terms[basis[i]] = sol.x[i];
    return out;
}

MinimalModelData minimal_model(long p, long q) {
    if (p < 2 || q < 2) throw std::invalid_argument("minimal_model: p, q must be >= 2");
    if (std::gcd(p, q) != 1) throw NotCoprime();

    MinimalModelData mm;
    mm.p = p;
    mm.q = q;
    mm.c = BigRat(1) - BigRat(6 * (p - q) * (p - q), p * q);

    std::set<BigRat> grid;
    for (long r = 1; r <= q - 1; ++r)
        for (long s = 1; s <= p - 1; ++s) {
            const long a = p * r - q * s;
            grid.insert(BigRat(a * a - (p - q) * (p - q), 4 * p * q));
        }
    mm.weights.assign(grid.begin(), grid.end());
    return mm;
}

}  // namespace mlde
