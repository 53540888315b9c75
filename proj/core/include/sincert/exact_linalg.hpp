#ifndef SINCERT_EXACT_LINALG_HPP
#define SINCERT_EXACT_LINALG_HPP

#include <functional>
#include <optional>
#include <vector>

#include "sincert/matrix.hpp"
#include "sincert/rational_function.hpp"

namespace sincert {

// Kernel basis of a matrix over the rationals (reduced row echelon form).
inline std::vector<std::vector<Rational>> exact_kernel(Matrix<Rational> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::optional<std::size_t>> pivot_of_col(cols);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t sel = rank;
        while (sel < rows && m(sel, c).is_zero()) ++sel;
        if (sel == rows) continue;
        if (sel != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(sel, j));
        Rational inv = Rational(1) / m(rank, c);
        for (std::size_t j = 0; j < cols; ++j) m(rank, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(rank, j);
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    std::vector<std::vector<Rational>> kernel;
    for (std::size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[c] = 1;
        for (std::size_t j = 0; j < cols; ++j)
            if (pivot_of_col[j]) v[j] = -m(*pivot_of_col[j], c);
        kernel.push_back(std::move(v));
    }
    return kernel;
}

inline std::size_t exact_rank(Matrix<Rational> m) {
    std::size_t cols = m.cols();
    auto ker = exact_kernel(std::move(m));
    return cols - ker.size();
}

// Fraction-free (Bareiss) elimination over Q[mu]. Columns are chosen from
// `allowed` with a preference for pivots that are nonzero constants, then by
// column order; all intermediate divisions are exact.
struct BareissEchelon {
    Matrix<QPoly> mat;                  // upper echelon, fraction-free entries
    std::vector<std::size_t> pivot_rows; // original row index per elimination step
    std::vector<std::size_t> pivot_cols; // chosen column per elimination step
    std::vector<std::size_t> row_order;  // permutation applied to the rows
    std::size_t rank = 0;
};

inline BareissEchelon bareiss_echelon(Matrix<QPoly> m, const std::vector<std::size_t>& allowed) {
    const std::size_t rows = m.rows();
    BareissEchelon out;
    out.row_order.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) out.row_order[i] = i;
    std::vector<bool> col_used(m.cols(), false);
    QPoly prev_piv = QPoly::constant(m.cols() ? m(0, 0).nvars() : 0, Rational(1));
    if (rows > 0) prev_piv = QPoly::constant(m(0, 0).nvars(), Rational(1));

    std::size_t step = 0;
    while (step < rows) {
        // pick pivot: prefer a nonzero constant entry, then lowest column index,
        // then lowest row index
        std::optional<std::pair<std::size_t, std::size_t>> best; // (row, col)
        bool best_const = false;
        for (std::size_t c : allowed) {
            if (col_used[c]) continue;
            for (std::size_t i = step; i < rows; ++i) {
                const QPoly& e = m(i, c);
                if (e.is_zero()) continue;
                bool is_const = e.total_degree() == 0;
                if (!best || (is_const && !best_const)) {
                    best = {i, c};
                    best_const = is_const;
                }
                break; // first nonzero row in this column is enough as candidate
            }
            if (best && best_const) break;
        }
        if (!best) break;
        auto [prow, pcol] = *best;
        if (prow != step) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(step, j), m(prow, j));
            std::swap(out.row_order[step], out.row_order[prow]);
        }
        const QPoly piv = m(step, pcol);
        for (std::size_t i = step + 1; i < rows; ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j == pcol) continue;
                QPoly t = m(i, j) * piv - m(i, pcol) * m(step, j);
                if (t.is_zero()) {
                    m(i, j) = t;
                    continue;
                }
                auto q = divide_exact(t, prev_piv);
                if (!q) throw std::logic_error("fraction-free elimination: inexact division");
                m(i, j) = std::move(*q);
            }
            m(i, pcol) = QPoly(piv.nvars());
        }
        col_used[pcol] = true;
        out.pivot_rows.push_back(out.row_order[step]);
        out.pivot_cols.push_back(pcol);
        prev_piv = piv;
        ++step;
    }
    out.rank = out.pivot_cols.size();
    out.mat = std::move(m);
    return out;
}

// Determinant of a square polynomial matrix by fraction-free elimination.
inline QPoly bareiss_det(Matrix<QPoly> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return QPoly::constant(0, Rational(1));
    const std::size_t nv = m(0, 0).nvars();
    QPoly prev = QPoly::constant(nv, Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t sel = k + 1;
            while (sel < n && m(sel, k).is_zero()) ++sel;
            if (sel == n) return QPoly(nv);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(sel, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                QPoly t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                if (t.is_zero()) { m(i, j) = t; continue; }
                auto q = divide_exact(t, prev);
                if (!q) throw std::logic_error("fraction-free determinant: inexact division");
                m(i, j) = std::move(*q);
            }
        prev = m(k, k);
    }
    QPoly det = m(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

// Solve A x = b exactly over Q(mu) where A is square nonsingular with
// polynomial entries (plain fraction Gauss; sizes here are tiny and the
// fraction-free path above carries the heavy elimination).
inline std::vector<RationalFunction> solve_rational(const Matrix<QPoly>& a,
                                                    const std::vector<RationalFunction>& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_rational shape mismatch");
    Matrix<RationalFunction> m(n, n + 1, RationalFunction());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = RationalFunction(a(i, j));
        m(i, n) = b[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t sel = k;
        while (sel < n && m(sel, k).is_zero()) ++sel;
        if (sel == n) throw std::domain_error("solve_rational: singular matrix");
        if (sel != k)
            for (std::size_t j = 0; j <= n; ++j) std::swap(m(k, j), m(sel, j));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            RationalFunction f = m(i, k) / m(k, k);
            for (std::size_t j = k; j <= n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    std::vector<RationalFunction> x(n, RationalFunction());
    for (std::size_t ii = n; ii-- > 0;) {
        RationalFunction s = m(ii, n);
        for (std::size_t j = ii + 1; j < n; ++j) s -= m(ii, j) * x[j];
        x[ii] = s / m(ii, ii);
    }
    return x;
}

} // namespace sincert

#endif
