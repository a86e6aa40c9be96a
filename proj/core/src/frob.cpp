#include "mlde/frob.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "mlde/errors.hpp"
#include "mlde/vir.hpp"

namespace mlde {

namespace {

// q^0 coefficient of a series; a series supported strictly above q^0 contributes
// nothing. Operator coefficients always carry a constant exponent offset.
template <class T>
T constant_term(const QSeries<T>& s) {
    const BigRat off = detail::as_rational(s.offset());
    if (off.sign() > 0) return T(0);
    const BigRat idx = (-off) * BigRat(s.step_den());
    if (!idx.is_integer()) return T(0);
    const long i = idx.num().get_si();
    if (i >= s.slots()) throw std::domain_error("constant_term: series window does not reach q^0");
    return s.slot(static_cast<int>(i));
}

template <class T>
IndicialPoly<T> indicial_impl(const ModLinOp<T>& op) {
    if (op.coef.empty() || op.leading().series.is_identically_zero())
        throw Degenerate("indicial: leading coefficient vanishes identically");
    const int order = op.order();
    IndicialPoly<T> ip;
    ip.coef.assign(static_cast<size_t>(order) + 1, T(0));
    // prod holds the coefficients of prod_{s=0}^{j-1} (x - s/6), updated in place.
    std::vector<T> prod{T(1)};
    for (int j = 0; j <= order; ++j) {
        const T cj = constant_term(op.coef[static_cast<size_t>(j)].series);
        if (!detail::value_is_zero(cj))
            for (size_t i = 0; i < prod.size(); ++i) ip.coef[i] += prod[i] * cj;
        if (j < order) {
            const T root = T(BigRat(static_cast<long>(j), 6));
            prod.push_back(T(0));
            for (size_t i = prod.size(); i-- > 1;) prod[i] = prod[i - 1] - root * prod[i];
            prod[0] = -(root * prod[0]);
        }
    }
    return ip;
}

// Copy of the operator with every coefficient on its sector's canonical grid
// (integer exponents untwisted, half-integer twisted).
template <class T>
std::pair<ModLinOp<T>, int> on_sector_grid(const ModLinOp<T>& op) {
    const int sd = op.twisted ? 2 : 1;
    ModLinOp<T> g = op;
    for (auto& f : g.coef) {
        if (f.series.step_den() > sd)
            throw std::invalid_argument("operator exponent grid finer than its sector allows");
        if (f.series.step_den() < sd) f.series = f.series.refined();
    }
    return {std::move(g), sd};
}

// Coefficients a_0 = 1, a_1, ..., a_terms of the series solution q^x sum a_n q^(n/sd),
// together with whether any step was resonant. The residual of the partial solution
// is kept applied; step n reads the obstruction from its n-th slot and cancels it
// with a_n I(x + n/sd).
template <class T>
std::pair<std::vector<T>, bool> frobenius_run(const ModLinOp<T>& op, int sd, const IndicialPoly<T>& ip,
                                              const T& x, int terms) {
    if (terms < 0) throw std::invalid_argument("frobenius: negative term count");
    const int window = terms + 1;
    ModLinOp<T> opw = op;
    for (auto& f : opw.coef) {
        if (f.series.slots() < window)
            throw std::invalid_argument("frobenius: operator truncation too short for the requested terms");
        f.series = f.series.truncated(window);
    }

    auto one_hot = [&](int n) {
        std::vector<T> v(static_cast<size_t>(window), T(0));
        v[static_cast<size_t>(n)] = T(1);
        return QSeries<T>(x, sd, std::move(v));
    };

    std::vector<T> a;
    a.reserve(static_cast<size_t>(window));
    a.push_back(T(1));
    QSeries<T> residual = apply_operator(opw, one_hot(0));
    bool resonant = false;
    for (int n = 1; n <= terms; ++n) {
        const T rhs = residual.slot(n);
        const T factor = ip(x + T(BigRat(n, sd)));
        if (detail::value_is_zero(factor)) {
            if constexpr (std::is_same_v<T, BigRat>) {
                resonant = true;
                if (!rhs.is_zero())
                    throw ResonantObstruction("frobenius step " + std::to_string(n) +
                                              ": vanishing indicial factor against a nonzero right-hand side");
                a.push_back(T(0));
                continue;
            } else {
                throw ResonantSymbolic("frobenius step " + std::to_string(n) +
                                       ": indicial factor identically zero");
            }
        }
        T an = -(rhs / factor);
        const bool zero = detail::value_is_zero(an);
        a.push_back(std::move(an));
        if (!zero) residual = residual + apply_operator(opw, one_hot(n)).scaled(a.back());
    }
    return {std::move(a), resonant};
}

long partition_count(int level, int min_part) {
    return static_cast<long>(fock_basis(level, min_part).size());
}

}  // namespace

IndicialPoly<RatFunc> indicial(const ModLinOp<RatFunc>& op) { return indicial_impl(op); }
IndicialPoly<BigRat> indicial(const ModLinOp<BigRat>& op) { return indicial_impl(op); }

IndicialPoly<BigRat> specialize_indicial(const IndicialPoly<RatFunc>& ip, const BigRat& c) {
    IndicialPoly<BigRat> out;
    out.coef.reserve(ip.coef.size());
    for (const auto& f : ip.coef) out.coef.push_back(f.eval(c));
    return out;
}

UniPoly indicial_unipoly(const IndicialPoly<BigRat>& ip) { return UniPoly::from_coeffs(ip.coef); }

std::vector<BigRat> rational_indicial_roots(const IndicialPoly<BigRat>& ip) {
    if (ip.degree() < 0) throw std::invalid_argument("rational_indicial_roots: zero polynomial");
    return rational_roots(indicial_unipoly(ip));
}

SeriesSolution solve_at(const ModLinOp<BigRat>& op, const BigRat& c, const BigRat& x, int terms) {
    auto [gop, sd] = on_sector_grid(op);
    const IndicialPoly<BigRat> ip = indicial(gop);
    if (!ip(x).is_zero()) throw std::invalid_argument("solve_at: x is not an indicial root");
    auto [a, resonant] = frobenius_run<BigRat>(gop, sd, ip, x, terms);
    SeriesSolution s;
    s.root_x = x;
    s.h = x + c / BigRat(24);
    s.coeffs = QSeries<BigRat>(x, sd, std::move(a));
    s.resonant = resonant;
    s.normalization = BigRat(1);
    return s;
}

QSeries<RatFunc> DimensionProfile::trace() const {
    const RatFunc x = -(RatFunc::variable() / RatFunc(24));
    return QSeries<RatFunc>(x, step_den, dims);
}

DimensionProfile solve_symbolic(const ModLinOp<RatFunc>& op, const BigRat& l, bool super_trace, int terms) {
    if (super_trace != op.twisted)
        throw std::invalid_argument("solve_symbolic: trace sector does not match the operator");
    auto [gop, sd] = on_sector_grid(op);
    const IndicialPoly<RatFunc> ip = indicial(gop);
    const RatFunc x = -(RatFunc::variable() / RatFunc(24));
    if (!ip(x).is_zero())
        throw std::invalid_argument("solve_symbolic: -c/24 is not a root of the indicial polynomial");
    auto [a, resonant] = frobenius_run<RatFunc>(gop, sd, ip, x, terms);
    (void)resonant;  // symbolic runs throw instead of flagging

    DimensionProfile prof;
    prof.l = l;
    prof.step_den = sd;
    prof.dims = std::move(a);
    for (int i = 1; i <= terms; ++i) {
        const BigRat n(static_cast<long>(i), sd);
        const RatFunc vac = n.is_integer()
                                ? RatFunc(BigRat(partition_count(static_cast<int>(n.num().get_si()), 2)))
                                : RatFunc(0);
        RatFunc p = prof.dims[static_cast<size_t>(i)] - vac;
        if (n < l && !p.is_zero())
            throw Inconsistent("solve_symbolic: grade " + n.to_string() +
                               " dimension deviates from the generic vacuum value below the first primary");
        for (const auto& [k, pk] : prof.p_funcs) {
            const BigRat gap = n - k;
            if (gap.sign() > 0 && gap.is_integer() && !pk.is_zero())
                p -= pk * RatFunc(BigRat(partition_count(static_cast<int>(gap.num().get_si()), 1)));
        }
        prof.p_funcs.emplace(n, std::move(p));
    }
    return prof;
}

RootConditionReport root_condition_report(const ModLinOp<RatFunc>& op, const BigRat& l, const BigRat& m_max) {
    const IndicialPoly<RatFunc> ip = indicial(op);
    const int sd = op.twisted ? 2 : 1;
    const RatFunc shift = -(RatFunc::variable() / RatFunc(24));
    RootConditionReport rep;
    for (BigRat m(0); m <= m_max; m += BigRat(1, sd)) {
        const bool root = ip(RatFunc(m) + shift).is_zero();
        rep.entries.push_back({m, root});
        if (root && m >= l) rep.violations.push_back(m);
    }
    return rep;
}

RootConditionReport root_condition_report(const ModLinOp<RatFunc>& op, const BigRat& l) {
    return root_condition_report(op, l, l + BigRat(8));
}

std::vector<ResonancePair> resonant_pairs(const std::vector<BigRat>& roots, int step_den) {
    std::vector<ResonancePair> out;
    for (size_t i = 0; i < roots.size(); ++i) {
        for (size_t j = i + 1; j < roots.size(); ++j) {
            const BigRat gap = roots[j] - roots[i];
            if (gap.sign() <= 0) continue;
            if (!(gap * BigRat(step_den)).is_integer()) continue;
            if (!out.empty() && out.back().lower == roots[i] && out.back().upper == roots[j]) continue;
            out.push_back({roots[i], roots[j], gap});
        }
    }
    return out;
}

}  // namespace mlde
