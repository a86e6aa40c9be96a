#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "mlde/polynomial.hpp"

namespace mlde {

namespace {

// Pollard rho (Brent variant). n must be odd, composite, > 1.
BigInt pollard_rho(const BigInt& n) {
    for (unsigned long c = 1;; ++c) {
        BigInt x(2), y(2), d(1);
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            BigInt diff = x > y ? x - y : y - x;
            if (diff == 0) break;  // cycle without factor; retry with next c
            d = int_gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factorize_into(BigInt n, std::map<BigInt, int>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            ++out[BigInt(p)];
            n /= static_cast<unsigned long>(p);
        }
    }
    for (long p = 17; p < 100000 && n > 1; p += 2) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            ++out[BigInt(p)];
            n /= static_cast<unsigned long>(p);
        }
    }
    std::vector<BigInt> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        BigInt m = stack.back();
        stack.pop_back();
        if (mpz_probab_prime_p(m.get_mpz_t(), 40) != 0) {
            ++out[m];
            continue;
        }
        BigInt d = pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
}

std::vector<BigInt> divisors_of(const BigInt& n) {
    std::map<BigInt, int> f;
    factorize_into(n, f);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, e] : f) {
        const size_t base = divs.size();
        BigInt pk(1);
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace

std::vector<BigRat> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<BigRat> roots;

    // Strip roots at zero.
    std::vector<BigRat> cs = p.coeffs();
    size_t low = 0;
    while (low < cs.size() && cs[low].is_zero()) ++low;
    for (size_t i = 0; i < low; ++i) roots.push_back(BigRat(0));
    cs.erase(cs.begin(), cs.begin() + static_cast<long>(low));
    UniPoly q = UniPoly::from_coeffs(std::move(cs)).primitive_part();

    if (q.degree() >= 1) {
        // Candidates num/den with num | trailing and den | leading, from the primitive integer form.
        const std::vector<BigInt> nums = divisors_of(q.coeff(0).num());
        const std::vector<BigInt> dens = divisors_of(q.leading().num());
        std::vector<BigRat> candidates;
        candidates.reserve(nums.size() * dens.size() * 2);
        for (const auto& n : nums)
            for (const auto& d : dens) {
                if (int_gcd(n, d) != 1) continue;
                candidates.push_back(BigRat(n, d));
                candidates.push_back(BigRat(-n, d));
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        for (const auto& r : candidates) {
            while (q.degree() >= 1 && q.eval(r).is_zero()) {
                roots.push_back(r);
                // Synthetic division by (x - r).
                const auto& qc = q.coeffs();
                std::vector<BigRat> next(qc.size() - 1);
                BigRat carry(0);
                for (size_t i = qc.size(); i-- > 1;) {
                    carry = qc[i] + carry * r;
                    next[i - 1] = carry;
                }
                q = UniPoly::from_coeffs(std::move(next));
            }
            if (q.degree() < 1) break;
        }
    }

    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace mlde
