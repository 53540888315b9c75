#ifndef SINCERT_NUMERIC_LINALG_HPP
#define SINCERT_NUMERIC_LINALG_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sincert/matrix.hpp"
#include "sincert/scalar.hpp"

namespace sincert {

using CMatrix = Matrix<Complex>;
using CVector = std::vector<Complex>;

inline Real norm2(const CVector& v) {
    Real s(0);
    for (const auto& x : v) s += abs2(x);
    return boost::multiprecision::sqrt(s);
}
inline Real norm_inf(const CVector& v) {
    Real m(0);
    for (const auto& x : v) m = std::max(m, abs(x));
    return m;
}
inline Real frobenius_norm(const CMatrix& a) {
    Real s(0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += abs2(a(i, j));
    return boost::multiprecision::sqrt(s);
}
inline Complex dot_conj(const CVector& a, const CVector& b) {
    Complex s;
    for (std::size_t i = 0; i < a.size(); ++i) s += conj(a[i]) * b[i];
    return s;
}

struct SvdResult {
    std::vector<Real> singular_values; // descending, length = cols
    CMatrix v;                         // right singular vectors as columns
};

// One-sided Jacobi on the columns. Rows are implicitly padded with zeros when
// rows < cols so that every column direction gets a singular value.
inline SvdResult svd_jacobi(const CMatrix& input) {
    const std::size_t n = input.cols();
    const std::size_t m = std::max(input.rows(), n);
    if (n == 0) throw std::invalid_argument("svd of an empty matrix");
    std::vector<CVector> a(n, CVector(m));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < input.rows(); ++i) a[j][i] = input(i, j);
    std::vector<CVector> v(n, CVector(n));
    for (std::size_t j = 0; j < n; ++j) v[j][j] = Complex(1);

    const Real tol = unit_roundoff() * Real("1e-3");
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Real app(0), aqq(0);
                Complex apq;
                for (std::size_t i = 0; i < m; ++i) {
                    app += abs2(a[p][i]);
                    aqq += abs2(a[q][i]);
                    apq += conj(a[p][i]) * a[q][i];
                }
                Real off = abs(apq);
                if (off.is_zero()) continue;
                if (off <= tol * boost::multiprecision::sqrt(app * aqq)) continue;
                converged = false;
                // phase so the coupled 2x2 Gram block becomes real
                Complex phase = apq / Complex(off);
                Real zeta = (aqq - app) / (2 * off);
                Real t;
                {
                    using boost::multiprecision::sqrt;
                    Real az = boost::multiprecision::abs(zeta);
                    t = Real(1) / (az + sqrt(Real(1) + zeta * zeta));
                    if (zeta < 0) t = -t;
                }
                Real cs = Real(1) / boost::multiprecision::sqrt(Real(1) + t * t);
                Real sn = cs * t;
                Complex cp(cs), sp = Complex(sn) * conj(phase), sq = Complex(sn) * phase;
                for (std::size_t i = 0; i < m; ++i) {
                    Complex ap = a[p][i], aq = a[q][i];
                    a[p][i] = cp * ap - sp * aq;
                    a[q][i] = sq * ap + cp * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    Complex vp = v[p][i], vq = v[q][i];
                    v[p][i] = cp * vp - sp * vq;
                    v[q][i] = sq * vp + cp * vq;
                }
            }
        }
        if (converged) break;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Real> sv(n);
    for (std::size_t j = 0; j < n; ++j) sv[j] = norm2(a[j]);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sv[x] > sv[y]; });

    SvdResult r;
    r.singular_values.reserve(n);
    r.v = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        r.singular_values.push_back(sv[order[j]]);
        for (std::size_t i = 0; i < n; ++i) r.v(i, j) = v[order[j]][i];
    }
    return r;
}

struct KernelResult {
    std::size_t rank = 0;
    std::vector<CVector> kernel;       // orthonormal basis of the numeric kernel
    std::vector<Real> singular_values; // descending
};

// Rank and kernel with an absolute singular-value threshold.
inline KernelResult numeric_kernel(const CMatrix& m, const Real& eps) {
    if (m.cols() == 0) throw std::invalid_argument("numeric_kernel of an empty matrix");
    if (!(eps > 0)) throw std::invalid_argument("tolerance must be positive");
    auto svd = svd_jacobi(m);
    KernelResult r;
    r.singular_values = svd.singular_values;
    for (std::size_t j = 0; j < svd.singular_values.size(); ++j) {
        if (svd.singular_values[j] > eps) {
            ++r.rank;
        } else {
            r.kernel.push_back(svd.v.col(j));
        }
    }
    return r;
}

inline Real sigma_min(const CMatrix& m) {
    auto svd = svd_jacobi(m);
    return svd.singular_values.back();
}

// Lower bound on sigma_min accounting for floating-point error in the SVD
// itself: computed value minus a standard backward-error majorant.
inline Real sigma_min_certified(const CMatrix& m) {
    Real s = sigma_min(m);
    Real eta = Real(10 * std::max(m.rows(), m.cols())) * unit_roundoff() * frobenius_norm(m);
    Real lo = s - eta;
    return lo > 0 ? lo : Real(0);
}

struct LuFactors {
    CMatrix lu;
    std::vector<std::size_t> perm;
    bool singular = false;
};

inline LuFactors lu_factor(CMatrix a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("lu_factor needs a square matrix");
    LuFactors f;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs(a(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best.is_zero()) { f.singular = true; break; }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex m = a(i, k) / a(k, k);
            a(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

inline CVector lu_solve(const LuFactors& f, const CVector& b) {
    const std::size_t n = f.perm.size();
    if (f.singular) throw std::domain_error("lu_solve: singular matrix");
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
        y[i] = s;
    }
    CVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Complex s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x[j];
        x[ii] = s / f.lu(ii, ii);
    }
    return x;
}

inline CVector solve(const CMatrix& a, const CVector& b) { return lu_solve(lu_factor(a), b); }

// Columns of a^{-1}; a must be square and nonsingular.
inline CMatrix inverse(const CMatrix& a) {
    const std::size_t n = a.rows();
    auto f = lu_factor(a);
    CMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        CVector e(n);
        e[j] = Complex(1);
        auto x = lu_solve(f, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

// Spectral norm (largest singular value).
inline Real spectral_norm(const CMatrix& a) {
    if (a.cols() == 0 || a.rows() == 0) return Real(0);
    return svd_jacobi(a).singular_values.front();
}

// Order-preserving thresholded Gram-Schmidt over the rows of `a`: rows listed
// in `forced` are orthonormalized first (and must be independent); every
// further candidate row is kept iff its residual after projection exceeds tau.
// Returns indices of kept rows, at most `limit` of them.
struct RowSelection {
    std::vector<std::size_t> kept;
    bool forced_dependent = false;
};

inline RowSelection select_rows_thresholded(const CMatrix& a, const std::vector<std::size_t>& forced,
                                            const std::vector<std::size_t>& candidates, const Real& tau,
                                            std::size_t limit) {
    RowSelection sel;
    std::vector<CVector> basis; // orthonormal
    auto project_residual = [&](CVector v) {
        for (int pass = 0; pass < 2; ++pass) // re-orthogonalize once
            for (const auto& q : basis) {
                Complex c = dot_conj(q, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
            }
        return v;
    };
    for (auto idx : forced) {
        CVector v = project_residual(a.row(idx));
        Real nv = norm2(v);
        if (nv <= tau) { sel.forced_dependent = true; continue; }
        for (auto& x : v) x /= Complex(nv);
        basis.push_back(std::move(v));
        sel.kept.push_back(idx);
    }
    for (auto idx : candidates) {
        if (sel.kept.size() >= limit) break;
        CVector v = project_residual(a.row(idx));
        Real nv = norm2(v);
        if (nv <= tau) continue;
        for (auto& x : v) x /= Complex(nv);
        basis.push_back(std::move(v));
        sel.kept.push_back(idx);
    }
    return sel;
}

} // namespace sincert

#endif
