#include "mlde/zhu.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "mlde/polynomial.hpp"

namespace mlde {

namespace {

constexpr const char* kCacheFormat = "mlde-op/1";

/// Fit and normalization read at most this many q-units of every series, so the
/// chosen scale and printed form are independent of K once K exceeds it. The
/// ring generators in scope are separated well before q^25.
constexpr int kFitWindowQ = 25;

int level_of(const Partition& p) {
    int s = 0;
    for (int part : p) s += part;
    return s;
}

template <class T>
ModForm<T> to_form(const ModForm<BigRat>& f) {
    return ModForm<T>(convert_series<T>(f.series), f.weight);
}

/// Structural Zhu reduction of vacuum descendants over the coefficient field T
/// (symbolic or specialized central charge). Operators and the untwisted
/// correction series are memoized per builder; a builder is single-threaded.
template <class T>
class OperatorBuilder {
public:
    OperatorBuilder(T c, bool twisted, int K) : c_(std::move(c)), twisted_(twisted), K_(K) {}

    int slots1() const { return K_ + 1; }

    const ModForm<T>& eis(int n) {
        auto it = eis_.find(n);
        if (it == eis_.end()) it = eis_.emplace(n, to_form<T>(eisenstein(n, K_))).first;
        return it->second;
    }

    ModForm<T> twisted_eis(int n) const { return to_form<T>(twisted_eisenstein(n, 1, -1, K_)); }

    ModLinOp<T> zero_op(int total_weight) const {
        return zero_operator<T>(total_weight, twisted_, 1, slots1());
    }

    ModLinOp<T> of_vector(const FockVector<T>& v) {
        ModLinOp<T> acc = zero_op(v.level);
        for (const auto& [part, coeff] : v.terms) {
            if (coeff.is_zero()) continue;
            acc = acc + vacuum_op(part).scaled(coeff);
        }
        return acc;
    }

    /// Operator of the basis word L[-p1]...L[-pk]|0>; strips the outer mode.
    const ModLinOp<T>& vacuum_op(const Partition& p) {
        auto it = memo_.find(p);
        if (it != memo_.end()) return it->second;

        ModLinOp<T> op;
        if (p.empty()) {
            op = identity_operator<T>(twisted_, 1, slots1());
        } else {
            const int k = p.front();
            const Partition rest(p.begin() + 1, p.end());
            const int rest_level = level_of(rest);
            FockVector<T> rest_vec;
            rest_vec.level = rest_level;
            rest_vec.terms[rest] = T(1);

            if (k == 2) {
                // One Serre-derivative step on the rest, plus E_{2s+2} corrections
                // from the positive even modes.
                op = serre_composed(vacuum_op(rest), rest_level);
                for (int s = 1; 2 * s <= rest_level; ++s)
                    op = op + eis(2 * s + 2) * of_vector(l_mode_apply(2 * s, rest_vec, c_));
            } else {
                // Deeper modes contribute no derivative: a pure moment expansion
                // (-1)^k sum_r binom(k+r-1, k-2) E_{k+r} applied to L[r] of the rest.
                // Odd-index Eisenstein series vanish, so only k+r even survives.
                op = zero_op(rest_level + k);
                for (int r = 0; r <= rest_level; ++r) {
                    if ((k + r) % 2 != 0) continue;
                    const FockVector<T> w = l_mode_apply(r, rest_vec, c_);
                    if (w.terms.empty()) continue;
                    BigRat b = binomial(BigRat(k + r - 1), k - 2);
                    if (k % 2 != 0) b = -b;
                    op = op + eis(k + r) * of_vector(w).scaled(T(b));
                }
            }
        }
        return memo_.emplace(p, std::move(op)).first->second;
    }

private:
    /// (q d/dq + w E_2) after the operator: coef[j] D^j picks up a D-shift plus
    /// the derivative of the coefficient and the weight-correction E_2 term,
    /// since q d/dq D^j = D^{j+1} - 2j E_2 D^j on weight-0 arguments.
    ModLinOp<T> serre_composed(const ModLinOp<T>& op, int w) {
        ModLinOp<T> r;
        r.total_weight = op.total_weight + 2;
        r.twisted = op.twisted;
        r.coef.reserve(op.coef.size() + 1);
        for (size_t j = 0; j <= op.coef.size(); ++j)
            r.coef.push_back(ModForm<T>(QSeries<T>::zero(T(0), 1, slots1()),
                                        r.total_weight - 2 * static_cast<int>(j)));
        const ModForm<T>& e2 = eis(2);
        for (size_t j = 0; j < op.coef.size(); ++j) {
            const ModForm<T>& f = op.coef[j];
            r.coef[j + 1] = ModForm<T>(r.coef[j + 1].series + f.series, r.coef[j + 1].weight);
            QSeries<T> s = f.series.euler_derivative();
            const long mult = w - 2 * static_cast<long>(j);
            if (mult != 0) s = s + (e2.series * f.series).scaled(T(BigRat(mult)));
            r.coef[j] = ModForm<T>(r.coef[j].series + s, r.coef[j].weight);
        }
        return r;
    }

    T c_;
    bool twisted_;
    int K_;
    std::map<int, ModForm<T>> eis_;
    std::map<Partition, ModLinOp<T>, PartitionOrder> memo_;
};

/// Half-step series refinement of every coefficient (canonical form for the
/// twisted sector).
template <class T>
ModLinOp<T> refined_op(ModLinOp<T> op) {
    for (auto& f : op.coef) f = ModForm<T>(f.series.refined(), f.weight);
    return op;
}

UniPoly poly_lcm(const UniPoly& a, const UniPoly& b) {
    return (a * b).divide_exact(poly_gcd(a, b)).monic();
}

// ---------------------------------------------------------------------------
// Eisenstein-ring fit

struct Generator {
    int n = 0;
    bool twisted = false;
};

std::vector<Generator> ring_generators(bool twisted_ring) {
    std::vector<Generator> g{{4, false}, {6, false}};
    if (twisted_ring)
        for (int n = 2; n <= 10; n += 2) g.push_back({n, true});
    return g;
}

void enumerate_monomials(const std::vector<Generator>& gens, size_t idx, int remaining,
                         std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (idx == gens.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    const int w = gens[idx].n;
    for (int e = remaining / w; e >= 0; --e) {
        cur[idx] = e;
        enumerate_monomials(gens, idx + 1, remaining - e * w, cur, out);
    }
    cur[idx] = 0;
}

QSeries<BigRat> generator_series(const Generator& g, int step_den, int slots) {
    const int Kq = slots;  // generous: at least `slots` grid points at either step
    QSeries<BigRat> s = g.twisted ? twisted_eisenstein(g.n, 1, -1, Kq).series : eisenstein(g.n, Kq).series;
    if (step_den == 2) s = s.refined();
    return s.truncated(slots);
}

}  // namespace

std::optional<std::vector<EisTerm>> eisenstein_expansion(const ModForm<RatFunc>& f, bool twisted_ring) {
    if (f.weight < 0) return std::nullopt;
    const int step = std::max(f.series.step_den(), twisted_ring ? 2 : 1);
    const QSeries<RatFunc> target = step == 2 ? f.series.refined() : f.series;
    const int W = target.slots();
    if (W == 0) return std::nullopt;
    const int rows = std::min(W, kFitWindowQ * step + 1);

    const auto gens = ring_generators(twisted_ring);
    std::vector<std::vector<int>> exps;
    std::vector<int> cur(gens.size(), 0);
    enumerate_monomials(gens, 0, f.weight, cur, exps);

    if (exps.empty()) {
        if (target.is_identically_zero()) return std::vector<EisTerm>{};
        return std::nullopt;
    }

    // Columns: monomial series over the full window (rows used for the solve,
    // the remainder for verification).
    std::vector<QSeries<BigRat>> cols;
    cols.reserve(exps.size());
    for (const auto& e : exps) {
        QSeries<BigRat> m = QSeries<BigRat>::constant(BigRat(1), step, W);
        for (size_t i = 0; i < gens.size(); ++i)
            if (e[i] > 0) m = m * generator_series(gens[i], step, W).pow(e[i]);
        cols.push_back(std::move(m));
    }

    // Forward elimination on the rational matrix, carrying the RatFunc right side.
    const size_t ncols = cols.size();
    std::vector<std::vector<BigRat>> A(static_cast<size_t>(rows), std::vector<BigRat>(ncols));
    for (int i = 0; i < rows; ++i)
        for (size_t j = 0; j < ncols; ++j) A[static_cast<size_t>(i)][j] = cols[j].slot(i);
    std::vector<RatFunc> b;
    b.reserve(static_cast<size_t>(rows));
    for (int i = 0; i < rows; ++i) b.push_back(target.slot(i));

    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < ncols && r < static_cast<size_t>(rows); ++col) {
        size_t pr = r;
        while (pr < static_cast<size_t>(rows) && A[pr][col].is_zero()) ++pr;
        if (pr == static_cast<size_t>(rows)) continue;
        std::swap(A[pr], A[r]);
        std::swap(b[pr], b[r]);
        for (size_t i = r + 1; i < static_cast<size_t>(rows); ++i) {
            if (A[i][col].is_zero()) continue;
            const BigRat m = A[i][col] / A[r][col];
            for (size_t j = col; j < ncols; ++j) A[i][j] -= m * A[r][j];
            b[i] -= b[r] * RatFunc(m);
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (size_t i = r; i < static_cast<size_t>(rows); ++i)
        if (!b[i].is_zero()) return std::nullopt;

    std::vector<RatFunc> x(ncols, RatFunc(0));
    for (size_t pr = pivot_col.size(); pr-- > 0;) {
        const size_t col = pivot_col[pr];
        RatFunc acc = b[pr];
        for (size_t j = col + 1; j < ncols; ++j)
            if (!x[j].is_zero() && !A[pr][j].is_zero()) acc -= x[j] * RatFunc(A[pr][j]);
        x[col] = acc / RatFunc(A[pr][col]);
    }

    // The fit must reproduce the target over its whole window, not only the
    // rows used to solve.
    QSeries<RatFunc> rebuilt = QSeries<RatFunc>::zero(RatFunc(0), step, W);
    for (size_t j = 0; j < ncols; ++j)
        if (!x[j].is_zero()) rebuilt = rebuilt + convert_series<RatFunc>(cols[j]).scaled(x[j]);
    if (!agree(rebuilt, target)) return std::nullopt;

    std::vector<EisTerm> terms;
    for (size_t j = 0; j < ncols; ++j) {
        if (x[j].is_zero()) continue;
        EisTerm t;
        t.coeff = x[j];
        for (size_t i = 0; i < gens.size(); ++i)
            if (exps[j][i] > 0) t.factors.push_back({gens[i].n, gens[i].twisted, exps[j][i]});
        terms.push_back(std::move(t));
    }
    return terms;
}

// ---------------------------------------------------------------------------
// Normalization

ModLinOp<RatFunc> normalized(ModLinOp<RatFunc> op) {
    const QSeries<RatFunc>& lead = op.leading().series;
    if (lead.slots() == 0 || lead.slot(0).is_zero()) throw Degenerate();
    for (int i = 1; i < lead.slots(); ++i)
        if (!lead.slot(i).is_zero()) throw std::domain_error("normalized: leading coefficient depends on q");
    const RatFunc p0 = lead.slot(0);

    // The finitely many structured coefficients when every coefficient lies in
    // the Eisenstein ring; otherwise every raw slot value in the fit window.
    std::vector<RatFunc> values;
    bool all_fit = true;
    for (const auto& f : op.coef) {
        const auto e = eisenstein_expansion(f, op.twisted);
        if (!e) {
            all_fit = false;
            break;
        }
        for (const auto& t : *e) values.push_back(t.coeff);
    }
    if (!all_fit) {
        values.clear();
        for (const auto& f : op.coef) {
            const int lim = std::min(f.series.slots(), kFitWindowQ * f.series.step_den() + 1);
            for (int i = 0; i < lim; ++i)
                if (!f.series.slot(i).is_zero()) values.push_back(f.series.slot(i));
        }
    }

    UniPoly den_lcm(BigRat(1));
    UniPoly num_gcd;
    for (const auto& v : values) {
        den_lcm = poly_lcm(den_lcm, v.den());
        num_gcd = poly_gcd(num_gcd, v.num());
    }
    RatFunc scale(den_lcm, num_gcd);

    const RatFunc p0_scaled = p0 * scale;
    if (!p0_scaled.is_polynomial())
        throw std::logic_error("normalized: common factors failed to clear the leading term");
    const UniPoly ps = p0_scaled.num();
    const UniPoly prim = ps.primitive_part();
    const BigRat s = ps.coeff(ps.degree()) / prim.coeff(prim.degree());
    scale = scale * RatFunc(BigRat(1) / s);

    for (auto& f : op.coef) f = f.scaled(scale);
    return op;
}

ModLinOp<BigRat> normalized(ModLinOp<BigRat> op) {
    const QSeries<BigRat>& lead = op.leading().series;
    if (lead.slots() == 0 || lead.slot(0).is_zero()) throw Degenerate();
    for (int i = 1; i < lead.slots(); ++i)
        if (!lead.slot(i).is_zero()) throw std::domain_error("normalized: leading coefficient depends on q");
    const BigRat inv = BigRat(1) / lead.slot(0);
    for (auto& f : op.coef) f = f.scaled(inv);
    return op;
}

ModLinOp<BigRat> specialize_operator(const ModLinOp<RatFunc>& op, const BigRat& c) {
    ModLinOp<BigRat> r;
    r.total_weight = op.total_weight;
    r.twisted = op.twisted;
    r.coef.reserve(op.coef.size());
    for (const auto& f : op.coef) r.coef.push_back(ModForm<BigRat>(specialize_series(f.series, c), f.weight));
    return r;
}

// ---------------------------------------------------------------------------
// Public reduction entry points

ModLinOp<RatFunc> descendant_operator(const FockVector<RatFunc>& v, const BigRat&, bool twisted, int K) {
    OperatorBuilder<RatFunc> b(RatFunc::variable(), twisted, K);
    return b.of_vector(v);
}

ModLinOp<RatFunc> casimir_operator(const BigRat& l, int n, bool twisted, int K) {
    OperatorBuilder<RatFunc> b(RatFunc::variable(), twisted, K);
    return b.of_vector(casimir_fock(l, n));
}

ModLinOp<RatFunc> casimir_descent(const BigRat& l, int n, bool twisted, int K) {
    const BigRat two_l = BigRat(2) * l;
    if (!two_l.is_integer()) throw std::invalid_argument("casimir_descent: 2l must be an integer");
    const long tl = two_l.num().get_si();
    const int J = n - static_cast<int>(tl);
    if (J < 1) throw std::invalid_argument("casimir_descent: requires n > 2l");

    OperatorBuilder<RatFunc> b(RatFunc::variable(), twisted, K);
    ModLinOp<RatFunc> acc = zero_operator<RatFunc>(n, twisted, 1, K + 1);
    for (long m = 0; m < tl; ++m) {
        const int idx = J + static_cast<int>(m) + 1;
        if (idx % 2 != 0) continue;  // odd-index series vanish in both sectors
        BigRat coeff = binomial(BigRat(J + m), m);
        if (m % 2 == 0) coeff = -coeff;
        const ModForm<RatFunc> kernel = twisted ? b.twisted_eis(idx) : b.eis(idx);
        const ModLinOp<RatFunc> sub = b.of_vector(casimir_fock(l, static_cast<int>(tl - 1 - m)));
        acc = acc + kernel.scaled(RatFunc(coeff)) * sub;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Operator cache

namespace {

std::mutex cache_mu;
std::optional<std::string> cache_dir_override;

std::string cache_file_name(const BigRat& l, bool twisted, int K) {
    std::string ls = l.num().get_str();
    if (!l.is_integer()) ls += "-" + l.den().get_str();
    return "op_l" + ls + (twisted ? "_tw" : "_untw") + "_K" + std::to_string(K) + ".json";
}

std::optional<ModLinOp<RatFunc>> load_cached(const BigRat& l, bool twisted, int K) {
    const std::string dir = operator_cache_dir();
    if (dir.empty()) return std::nullopt;
    const std::filesystem::path path = std::filesystem::path(dir) / cache_file_name(l, twisted, K);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::ostringstream text;
    text << in.rdbuf();
    return operator_from_json(text.str(), l, twisted, K);
}

void store_cached(const ModLinOp<RatFunc>& op, const BigRat& l, int K) {
    const std::string dir = operator_cache_dir();
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::filesystem::path path = std::filesystem::path(dir) / cache_file_name(l, op.twisted, K);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << operator_to_json(op, l, K);
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

nlohmann::json poly_to_json(const UniPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.to_string());
    return a;
}

UniPoly poly_from_json(const nlohmann::json& a) {
    std::vector<BigRat> c;
    c.reserve(a.size());
    for (const auto& s : a) c.push_back(BigRat::from_string(s.get<std::string>()));
    return UniPoly::from_coeffs(std::move(c));
}

}  // namespace

void set_operator_cache_dir(std::string dir) {
    std::lock_guard<std::mutex> lk(cache_mu);
    cache_dir_override = std::move(dir);
}

std::string operator_cache_dir() {
    std::lock_guard<std::mutex> lk(cache_mu);
    if (cache_dir_override) return *cache_dir_override;
    const char* env = std::getenv("MLDE_CACHE_DIR");
    return env == nullptr ? std::string() : std::string(env);
}

std::string operator_to_json(const ModLinOp<RatFunc>& op, const BigRat& l, int K) {
    nlohmann::json j;
    j["format"] = kCacheFormat;
    j["l"] = l.to_string();
    j["twisted"] = op.twisted;
    j["K"] = K;
    j["total_weight"] = op.total_weight;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : op.coef) {
        nlohmann::json cj;
        cj["weight"] = f.weight;
        cj["offset"] = f.series.offset().to_rational().to_string();
        cj["step_den"] = f.series.step_den();
        nlohmann::json slots = nlohmann::json::array();
        for (int i = 0; i < f.series.slots(); ++i) {
            const RatFunc& v = f.series.slot(i);
            slots.push_back({{"num", poly_to_json(v.num())}, {"den", poly_to_json(v.den())}});
        }
        cj["slots"] = slots;
        arr.push_back(std::move(cj));
    }
    j["coefficients"] = std::move(arr);
    return j.dump(1);
}

std::optional<ModLinOp<RatFunc>> operator_from_json(const std::string& text, const BigRat& l, bool twisted,
                                                    int K) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        if (j.at("format").get<std::string>() != kCacheFormat) return std::nullopt;
        if (j.at("l").get<std::string>() != l.to_string()) return std::nullopt;
        if (j.at("twisted").get<bool>() != twisted) return std::nullopt;
        if (j.at("K").get<int>() != K) return std::nullopt;
        ModLinOp<RatFunc> op;
        op.total_weight = j.at("total_weight").get<int>();
        op.twisted = twisted;
        for (const auto& cj : j.at("coefficients")) {
            const BigRat offset = BigRat::from_string(cj.at("offset").get<std::string>());
            const int step_den = cj.at("step_den").get<int>();
            std::vector<RatFunc> coef;
            for (const auto& sj : cj.at("slots"))
                coef.emplace_back(poly_from_json(sj.at("num")), poly_from_json(sj.at("den")));
            op.coef.push_back(ModForm<RatFunc>(
                QSeries<RatFunc>(RatFunc(offset), step_den, std::move(coef)), cj.at("weight").get<int>()));
        }
        if (op.coef.empty()) return std::nullopt;
        return op;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Assembly

ModLinOp<RatFunc> assemble_mlde(long l, int K) {
    if (l < 1) throw std::invalid_argument("assemble_mlde: l must be a positive integer");
    const BigRat lr(l);
    if (auto cached = load_cached(lr, false, K)) return *cached;

    OperatorBuilder<RatFunc> b(RatFunc::variable(), false, K);
    ModLinOp<RatFunc> op = b.of_vector(casimir_fock(lr, static_cast<int>(2 * l + 2)));
    for (long k = 0; k < l; ++k) {
        const int w = static_cast<int>(2 * l - 2 * k + 2);
        const RatFunc mult(binomial(BigRat(2 * l - 2 * k + 1), 2));
        op = op - b.eis(w).scaled(mult) * b.of_vector(casimir_fock(lr, static_cast<int>(2 * k)));
    }
    op = normalized(std::move(op));
    store_cached(op, lr, K);
    return op;
}

ModLinOp<RatFunc> assemble_tmlde(const BigRat& l, int K) {
    const BigRat two_l = BigRat(2) * l;
    if (l.sign() <= 0 || !two_l.is_integer() || l.is_integer())
        throw std::invalid_argument("assemble_tmlde: l must be a positive half-odd-integer");
    if (auto cached = load_cached(l, true, K)) return *cached;

    OperatorBuilder<RatFunc> b(RatFunc::variable(), true, K);
    const int top = static_cast<int>(two_l.num().get_si()) + 1;  // 2l+1, even
    ModLinOp<RatFunc> op = b.of_vector(casimir_fock(l, top));
    for (int r = 0; 2 * r < top - 1; ++r) {
        const int idx = top - 2 * r;  // 2(l-r)+1, even
        const RatFunc mult(BigRat(idx - 1));
        op = op + b.twisted_eis(idx).scaled(mult) * b.of_vector(casimir_fock(l, 2 * r));
    }
    op = refined_op(normalized(std::move(op)));
    store_cached(op, l, K);
    return op;
}

ModLinOp<BigRat> assemble_mlde_at(long l, const BigRat& c, int K) {
    if (l < 1) throw std::invalid_argument("assemble_mlde_at: l must be a positive integer");
    const BigRat lr(l);
    OperatorBuilder<BigRat> b(c, false, K);
    ModLinOp<BigRat> op = b.of_vector(casimir_fock_at(lr, static_cast<int>(2 * l + 2), c));
    for (long k = 0; k < l; ++k) {
        const int w = static_cast<int>(2 * l - 2 * k + 2);
        const BigRat mult = binomial(BigRat(2 * l - 2 * k + 1), 2);
        op = op - b.eis(w).scaled(mult) * b.of_vector(casimir_fock_at(lr, static_cast<int>(2 * k), c));
    }
    return normalized(std::move(op));
}

ModLinOp<BigRat> assemble_tmlde_at(const BigRat& l, const BigRat& c, int K) {
    const BigRat two_l = BigRat(2) * l;
    if (l.sign() <= 0 || !two_l.is_integer() || l.is_integer())
        throw std::invalid_argument("assemble_tmlde_at: l must be a positive half-odd-integer");
    OperatorBuilder<BigRat> b(c, true, K);
    const int top = static_cast<int>(two_l.num().get_si()) + 1;
    ModLinOp<BigRat> op = b.of_vector(casimir_fock_at(l, top, c));
    for (int r = 0; 2 * r < top - 1; ++r) {
        const int idx = top - 2 * r;
        op = op + b.twisted_eis(idx).scaled(BigRat(idx - 1)) * b.of_vector(casimir_fock_at(l, 2 * r, c));
    }
    return refined_op(normalized(std::move(op)));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string factors_to_string(const std::vector<EisFactor>& fs) {
    std::ostringstream os;
    for (const auto& f : fs) {
        os << ' ' << (f.twisted ? 'F' : 'E') << f.n;
        if (f.power > 1) os << '^' << f.power;
    }
    return os.str();
}

}  // namespace

std::string operator_to_string(const ModLinOp<RatFunc>& op) {
    std::ostringstream os;
    bool printed = false;
    for (int j = op.order(); j >= 0; --j) {
        const ModForm<RatFunc>& f = op.coef[static_cast<size_t>(j)];
        if (f.series.is_identically_zero()) continue;
        if (printed) os << " + ";
        printed = true;

        const auto fit = eisenstein_expansion(f, op.twisted);
        if (fit) {
            os << '(';
            for (size_t t = 0; t < fit->size(); ++t) {
                if (t > 0) os << " + ";
                os << '(' << (*fit)[t].coeff.to_string() << ')' << factors_to_string((*fit)[t].factors);
            }
            os << ')';
        } else {
            os << f.series.to_string();
        }
        if (j == 1) os << " D";
        if (j > 1) os << " D^" << j;
    }
    if (!printed) os << "0";
    return os.str();
}

}  // namespace mlde
