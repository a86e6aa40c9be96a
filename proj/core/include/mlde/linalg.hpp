#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mlde/errors.hpp"
#include "mlde/polynomial.hpp"
#include "mlde/rational.hpp"
#include "mlde/rational_function.hpp"

namespace mlde {

/// Dense matrix over an exact coefficient field F (BigRat or RatFunc).
template <class F>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, F(0)) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    F& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const F& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const F& a = at(i, k);
                if (a.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

private:
    size_t rows_, cols_;
    std::vector<F> e_;
};

template <class F>
struct LinearSolution {
    std::vector<F> x;
    F det;
};

/// Exact solve of a square system by fraction-free (Bareiss) elimination.
///
/// The Bareiss update (pivot*a[i][j] - a[i][k]*a[k][j]) / previous_pivot divides exactly,
/// so polynomial entries never acquire spurious denominators. The determinant falls out
/// as the final pivot. Throws SingularMatrix when the determinant is zero.
template <class F>
LinearSolution<F> solve_linear(Matrix<F> a, std::vector<F> rhs) {
    const size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) throw Error("solve_linear: shape mismatch");
    if (n == 0) {
        // Empty system: trivially consistent, empty-product determinant.
        LinearSolution<F> sol;
        sol.det = F(1);
        return sol;
    }

    // Augmented column index n holds the rhs.
    Matrix<F> m(n, n + 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
        m.at(i, n) = rhs[i];
    }

    bool negate = false;
    F prev(1);
    for (size_t k = 0; k + 1 <= n; ++k) {
        size_t pivot = k;
        while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrix();
        if (pivot != k) {
            for (size_t j = k; j <= n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j <= n; ++j)
                m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = F(0);
        }
        prev = m.at(k, k);
    }

    F det = m.at(n - 1, n - 1);
    if (negate) det = -det;
    if (det.is_zero()) throw SingularMatrix();

    LinearSolution<F> sol;
    sol.det = det;
    sol.x.assign(n, F(0));
    for (size_t i = n; i-- > 0;) {
        F acc = m.at(i, n);
        for (size_t j = i + 1; j < n; ++j) acc = acc - m.at(i, j) * sol.x[j];
        sol.x[i] = acc / m.at(i, i);
    }
    return sol;
}

/// Determinant by the same elimination; zero result is returned, not thrown.
template <class F>
F determinant(const Matrix<F>& a) {
    const size_t n = a.rows();
    if (a.cols() != n) throw Error("determinant: not square");
    if (n == 0) return F(1);
    Matrix<F> m = a;
    bool negate = false;
    F prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
        if (pivot == n) return F(0);
        if (pivot != k) {
            for (size_t j = k; j < n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = F(0);
        }
        prev = m.at(k, k);
    }
    F det = m.at(n - 1, n - 1);
    return negate ? -det : det;
}

/// Determinant of a polynomial matrix, fraction-free throughout (every division
/// is exact). Returns the zero polynomial instead of throwing.
inline UniPoly determinant(const Matrix<UniPoly>& a) {
    const size_t n = a.rows();
    if (a.cols() != n) throw Error("determinant: not square");
    if (n == 0) return UniPoly(1);
    Matrix<UniPoly> m = a;
    bool negate = false;
    UniPoly prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
        if (pivot == n) return UniPoly();
        if (pivot != k) {
            for (size_t j = k; j < n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)).divide_exact(prev);
            m.at(i, k) = UniPoly();
        }
        prev = m.at(k, k);
    }
    UniPoly det = m.at(n - 1, n - 1);
    return negate ? -det : det;
}

/// Exact solve of a square polynomial system over Q(c).
///
/// Both the elimination and the back substitution are fraction-free: the
/// intermediate values are Cramer-style minors, so every division is an exact
/// polynomial division. The only gcd work is the final reduction y_i/det per
/// unknown, which keeps large symbolic systems out of Euclid's coefficient blowup.
inline LinearSolution<RatFunc> solve_poly_linear(const Matrix<UniPoly>& a, const std::vector<UniPoly>& rhs) {
    const size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) throw Error("solve_poly_linear: shape mismatch");
    if (n == 0) {
        // Empty system: trivially consistent, empty-product determinant.
        LinearSolution<RatFunc> sol;
        sol.det = RatFunc(1);
        return sol;
    }

    Matrix<UniPoly> m(n, n + 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
        m.at(i, n) = rhs[i];
    }

    bool negate = false;
    UniPoly prev(1);
    for (size_t k = 0; k + 1 <= n; ++k) {
        size_t pivot = k;
        while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrix();
        if (pivot != k) {
            for (size_t j = k; j <= n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j <= n; ++j)
                m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)).divide_exact(prev);
            m.at(i, k) = UniPoly();
        }
        prev = m.at(k, k);
    }

    // Row swaps permute the Cramer numerators and the determinant by the same
    // sign, so the quotients below already solve the original system.
    const UniPoly det_unsigned = m.at(n - 1, n - 1);
    if (det_unsigned.is_zero()) throw SingularMatrix();

    std::vector<UniPoly> y(n);
    for (size_t i = n; i-- > 0;) {
        UniPoly acc = m.at(i, n) * det_unsigned;
        for (size_t j = i + 1; j < n; ++j) acc -= m.at(i, j) * y[j];
        y[i] = (i + 1 == n) ? m.at(i, n) : acc.divide_exact(m.at(i, i));
    }

    LinearSolution<RatFunc> sol;
    sol.det = RatFunc(negate ? -det_unsigned : det_unsigned);
    sol.x.reserve(n);
    for (size_t i = 0; i < n; ++i) sol.x.emplace_back(y[i], det_unsigned);
    return sol;
}

/// Entry-wise coefficient-type change (e.g. UniPoly entries into the RatFunc field).
template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
    Matrix<To> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = To(m.at(i, j));
    return r;
}

/// Evaluates a polynomial matrix at a concrete central charge.
inline Matrix<BigRat> eval_matrix(const Matrix<UniPoly>& m, const BigRat& c) {
    Matrix<BigRat> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).eval(c);
    return r;
}

}  // namespace mlde
