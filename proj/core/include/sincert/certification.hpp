#ifndef SINCERT_CERTIFICATION_HPP
#define SINCERT_CERTIFICATION_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sincert/deflation.hpp"
#include "sincert/hilbert_param.hpp"
#include "sincert/multiplicity.hpp"
#include "sincert/numeric_linalg.hpp"

namespace sincert {

inline Real alpha_threshold() { return Real("0.26141"); }

struct AlphaData {
    Real beta{0};      // 2 ||J0^{-1} F0||_2
    Real gamma_hat{0}; // certified upper bound on the higher-derivative constant
    Real alpha_hat{0}; // beta * gamma_hat
    bool pass = false;
};

struct NewtonOptions {
    std::optional<Real> tol; // default 10^(2 - working digits)
    std::size_t maxiter = 64;
};

struct NewtonTrace {
    std::vector<Real> residual_inf; // ||F0||_inf at each iterate, start included
    std::vector<Real> residual_two;
    std::vector<Real> step_norm;
    std::vector<Complex> solution;
    bool converged = false;
    bool quadratic = false;
    bool diverged = false;
    std::string message;
    std::size_t iterations = 0;
};

inline Real default_newton_tol() {
    return boost::multiprecision::pow(Real(10), 2 - static_cast<int>(working_digits()));
}

// Plain Newton iteration on the square subsystem, recording the residual
// trace. Divergence is declared after three consecutive residual increases.
inline NewtonTrace newton_solve(const DeflatedSystem<Complex>& sys,
                                const std::vector<std::size_t>& f0, std::vector<Complex> z,
                                const NewtonOptions& opts = {}) {
    if (f0.size() != sys.nvars())
        throw std::invalid_argument("newton_solve: subsystem is not square");
    const Real tol = opts.tol.value_or(default_newton_tol());
    NewtonTrace tr;
    std::size_t grow_streak = 0;
    for (std::size_t it = 0;; ++it) {
        auto fz = eval_equations(sys, z, f0);
        Real rinf = norm_inf(fz);
        tr.residual_inf.push_back(rinf);
        tr.residual_two.push_back(norm2(fz));
        if (tr.residual_inf.size() >= 2) {
            if (rinf > tr.residual_inf[tr.residual_inf.size() - 2]) {
                if (++grow_streak >= 3) {
                    tr.diverged = true;
                    tr.message = "residual grew for three consecutive steps";
                    break;
                }
            } else {
                grow_streak = 0;
            }
        }
        if (rinf <= tol) {
            tr.converged = true;
            tr.iterations = it;
            break;
        }
        if (it >= opts.maxiter) {
            tr.message = "iteration limit reached";
            tr.iterations = it;
            break;
        }
        auto jf = jacobian(sys, z, f0);
        auto lu = lu_factor(jf);
        if (lu.singular) {
            tr.message = "singular Jacobian encountered";
            break;
        }
        auto dz = lu_solve(lu, fz);
        tr.step_norm.push_back(norm2(dz));
        for (std::size_t i = 0; i < z.size(); ++i) z[i] -= dz[i];
    }
    tr.solution = std::move(z);
    // quadratic-rate flag: once the residual is below 1e-3, each next residual
    // should be within 100 * previous^2
    {
        bool any = false, ok = true;
        for (std::size_t i = 0; i + 1 < tr.residual_inf.size(); ++i) {
            if (tr.residual_inf[i] < Real("1e-3") && tr.residual_inf[i] > 0) {
                Real lhs = tr.residual_inf[i + 1];
                Real rhs = Real(100) * tr.residual_inf[i] * tr.residual_inf[i];
                // ignore steps already at the round-off floor
                if (lhs > Real(10) * default_newton_tol() || rhs > default_newton_tol()) {
                    any = true;
                    if (lhs > rhs) ok = false;
                }
            }
        }
        tr.quadratic = any && ok;
    }
    return tr;
}

// Certified bound on sup_{k>=2} ||J0^{-1} D^k F0 / k!||^{1/(k-1)}: for each
// degree k the Taylor coefficient matrix at the point, columns scaled by
// sqrt(alpha!/k!), is mixed by J0^{-1}; its spectral norm bounds the
// symmetric-tensor norm because sum_alpha (k!/alpha!) |u|^{2 alpha} = ||u||^{2k}.
inline AlphaData alpha_test(const DeflatedSystem<Complex>& sys, const std::vector<std::size_t>& f0,
                            const std::vector<Complex>& z) {
    if (f0.size() != sys.nvars()) throw std::invalid_argument("alpha_test: subsystem is not square");
    const std::size_t m = f0.size();
    auto jf = jacobian(sys, z, f0);
    auto lu = lu_factor(jf);
    if (lu.singular) throw std::domain_error("alpha_test: singular Jacobian at the point");
    auto fz = eval_equations(sys, z, f0);
    auto ji = inverse(jf);

    AlphaData out;
    out.beta = 2 * norm2(ji.apply(fz));

    // Taylor expansions of every selected equation at z, grouped by degree
    std::vector<std::map<ExponentVector, Complex, TermLess>> taylor;
    std::uint32_t maxdeg = 0;
    for (auto idx : f0) {
        const auto& p = sys.equation(idx);
        maxdeg = std::max(maxdeg, p.total_degree());
        taylor.push_back(p.taylor_at(std::span<const Complex>(z), p.total_degree()));
    }
    Real gamma_hat(0);
    for (std::uint32_t k = 2; k <= maxdeg; ++k) {
        std::map<ExponentVector, std::size_t, TermLess> col_of;
        for (const auto& T : taylor)
            for (const auto& [a, c] : T)
                if (degree(a) == k && !col_of.count(a)) {
                    std::size_t next = col_of.size();
                    col_of[a] = next;
                }
        if (col_of.empty()) continue;
        Matrix<Complex> ck(m, col_of.size());
        std::uint64_t kfact = 1;
        for (std::uint32_t v = 2; v <= k; ++v) kfact *= v;
        for (std::size_t r = 0; r < m; ++r)
            for (const auto& [a, c] : taylor[r]) {
                if (degree(a) != k) continue;
                Real scale = boost::multiprecision::sqrt(Real(exponent_factorial(a)) / Real(kfact));
                ck(r, col_of[a]) = c * Complex(scale);
            }
        Matrix<Complex> mixed = ji * ck;
        Real bound = spectral_norm(mixed);
        bound += Real(10 * std::max(mixed.rows(), mixed.cols())) * unit_roundoff() * frobenius_norm(mixed);
        Real g = k == 2 ? bound : boost::multiprecision::pow(bound, Real(1) / Real(k - 1));
        gamma_hat = std::max(gamma_hat, g);
    }
    out.gamma_hat = gamma_hat;
    out.alpha_hat = out.beta * out.gamma_hat;
    out.pass = out.alpha_hat < alpha_threshold();
    return out;
}

// Upper bound of |p(y)| over the ball ||y - z|| <= b.
inline Real ball_bound(const Polynomial<Complex>& p, const std::vector<Complex>& z, const Real& b) {
    auto T = p.taylor_at(std::span<const Complex>(z), p.total_degree());
    Real acc(0);
    for (const auto& [a, c] : T) acc += abs(c) * boost::multiprecision::pow(b, degree(a));
    return acc;
}

// Lipschitz majorant for a matrix (or stacked vector) of polynomial entries
// on the ball of radius b around z: the Frobenius stack of per-entry gradient
// bounds, each obtained from absolute Taylor coefficients over the ball.
inline Real lipschitz_bound(const std::vector<std::vector<Polynomial<Complex>>>& entries,
                            const std::vector<Complex>& z, const Real& b) {
    if (!(b > 0)) throw std::invalid_argument("lipschitz_bound: radius must be positive");
    Real acc(0);
    for (const auto& row : entries)
        for (const auto& p : row) {
            Real g2(0);
            for (std::size_t m2 = 0; m2 < p.nvars(); ++m2) {
                auto d = p.derivative(m2);
                if (d.is_zero()) continue;
                Real g = ball_bound(d, z, b);
                g2 += g * g;
            }
            acc += g2;
        }
    return boost::multiprecision::sqrt(acc);
}

// The completeness matrix of the structure at degree o+1, with parametric
// entries in (x, mu): the same rows as the kernel problem that rejected, but
// as polynomials, so it can be evaluated and Lipschitz-bounded near a point.
inline std::vector<std::vector<Polynomial<Complex>>>
completeness_matrix_parametric(const DeflatedSystem<Complex>& sys) {
    const std::size_t n = sys.nx;
    const std::size_t r = sys.basis.size();
    const std::size_t nvar = sys.nvars();
    std::uint32_t t = 0;
    for (const auto& b : sys.basis) t = std::max(t, degree(b));
    t += 1;

    auto slot = [&](std::size_t i, std::size_t j, std::size_t k) {
        return detail::slot_polynomial<Complex>(sys.basis, sys.mu_index, nvar, i, j, k);
    };
    // mu_{beta_j, beta_s + e_l} as a polynomial: the coefficient of the
    // parametric dual j on that normalized monomial
    auto mu_poly = [&](std::size_t j, const ExponentVector& a) {
        const auto* c = sys.duals[j].find_coeff(a);
        return c ? *c : Polynomial<Complex>(nvar);
    };

    std::vector<std::vector<Polynomial<Complex>>> rows;
    const Polynomial<Complex> zero(nvar);
    const std::size_t ncols = r * n;
    for (std::size_t s = 0; s < r; ++s) {
        if (degree(sys.basis[s]) + 2 > t) continue;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l) {
                std::vector<Polynomial<Complex>> row(ncols, zero);
                for (std::size_t j = 0; j < r; ++j) {
                    auto dj = degree(sys.basis[j]);
                    if (!(degree(sys.basis[s]) < dj && dj < t)) continue;
                    row[j * n + k] += mu_poly(j, add_unit(sys.basis[s], l));
                    row[j * n + l] -= mu_poly(j, add_unit(sys.basis[s], k));
                }
                rows.push_back(std::move(row));
            }
    }
    std::set<ExponentVector> in_basis(sys.basis.begin(), sys.basis.end());
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (in_basis.count(add_unit(sys.basis[j], k))) {
                std::vector<Polynomial<Complex>> row(ncols, zero);
                row[j * n + k] = Polynomial<Complex>::constant(nvar, Complex(1));
                rows.push_back(std::move(row));
            }
    for (std::size_t fi = 0; fi < sys.system.size(); ++fi) {
        std::vector<Polynomial<Complex>> row(ncols, zero);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                auto integ = truncated_integral(sys.duals[j], k);
                Polynomial<Complex> p(nvar);
                for (const auto& [a, c] : integ.coeffs)
                    p += c * sys.system[fi].normalized_derivative(a).lift(nvar, 0);
                row[j * n + k] = std::move(p);
            }
        rows.push_back(std::move(row));
    }
    return rows;
}

// A_reg,t with parametric entries in the deflated variables.
inline std::vector<std::vector<Polynomial<Complex>>>
areg_matrix_parametric(const DeflatedSystem<Complex>& sys, const AregRecord& rec) {
    const std::size_t nvar = sys.nvars();
    auto mu_poly = [&](std::size_t j, const ExponentVector& a) {
        const auto* c = sys.duals[j].find_coeff(a);
        return c ? *c : Polynomial<Complex>(nvar);
    };
    std::vector<std::vector<Polynomial<Complex>>> rows;
    for (const auto& [s, k, l] : rec.areg_rows) {
        std::vector<Polynomial<Complex>> row;
        for (const auto& [j, kk] : rec.areg_cols) {
            Polynomial<Complex> p(nvar);
            if (kk == k) p += mu_poly(j, add_unit(sys.basis[s], l));
            if (kk == l) p -= mu_poly(j, add_unit(sys.basis[s], k));
            row.push_back(std::move(p));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix<Complex> eval_matrix(const std::vector<std::vector<Polynomial<Complex>>>& entries,
                                   const std::vector<Complex>& z) {
    if (entries.empty()) return Matrix<Complex>(0, 0);
    Matrix<Complex> m(entries.size(), entries.front().size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = 0; j < entries[i].size(); ++j) m(i, j) = entries[i][j].eval(z);
    return m;
}

} // namespace sincert

#endif
