#ifndef SINCERT_MULTIPLICITY_HPP
#define SINCERT_MULTIPLICITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sincert/dual.hpp"
#include "sincert/exact_linalg.hpp"
#include "sincert/exponent.hpp"
#include "sincert/matrix.hpp"
#include "sincert/numeric_linalg.hpp"
#include "sincert/polynomial.hpp"

namespace sincert {

// Key of a mu entry: coefficient of integral direction k of dual j inside
// dual i, i.e. mu_{beta_i, beta_j + e_k}; all indices 0-based.
struct NuKey {
    std::size_t i, j, k;
    friend auto operator<=>(const NuKey&, const NuKey&) = default;
};

template <class S>
struct MuTable {
    std::map<NuKey, S> entries; // (i,j,k), defined for deg(beta_j) < deg(beta_i)

    S value(std::size_t i, std::size_t j, std::size_t k) const {
        auto it = entries.find(NuKey{i, j, k});
        return it == entries.end() ? scalar_traits<S>::zero() : it->second;
    }
};

// Result of the degree-by-degree construction of the inverse system.
template <class S>
struct MultiplicityStructure {
    std::vector<S> point;                 // xi
    std::vector<ExponentVector> basis;    // B, degree-sorted, closed under division
    std::vector<DualElement<S>> duals;    // Lambda, dual to B, anchored at xi
    MuTable<S> mu;
    std::uint32_t nil_index = 0;          // o
    std::vector<std::size_t> hilbert;     // h_0..h_o
    std::optional<Real> sigma_min_reject; // smallest singular value of the rejecting K_{o+1}
    std::vector<std::pair<std::size_t, std::size_t>> k_dims; // (rows, cols) of each K_t
    std::vector<std::string> pivot_notes; // tie-break decisions taken during pivoting

    std::size_t multiplicity() const { return basis.size(); }
    std::size_t nvars() const { return point.size(); }

    // mu_{beta_i, alpha} for general alpha: a direct coefficient read in the
    // normalized dual basis.
    S mu_of_exponent(std::size_t i, const ExponentVector& alpha) const {
        return dual_coeff(duals[i], alpha);
    }

    std::vector<std::size_t> degree_prefix() const { // r_t
        std::vector<std::size_t> r;
        std::size_t acc = 0;
        for (auto h : hilbert) r.push_back(acc += h);
        return r;
    }
};

enum class RowKind { Commutation, PivotExclusion, SystemRow };

struct KtRowLabel {
    RowKind kind;
    std::size_t s = 0, k = 0, l = 0; // commutation: pair k<l against beta_s
    std::size_t j = 0;               // exclusion: the forced nu_j^k slot
    std::size_t f = 0;               // system row index
};

template <class S>
struct KtAssembly {
    Matrix<S> k_matrix;                              // commutation + exclusion + system rows
    std::size_t h_rows = 0;                          // leading rows forming the H_t block
    std::size_t comm_rows = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cols; // (j,k), j outer
    std::vector<KtRowLabel> row_labels;
};

// Coefficient matrix K_t of the degree-t kernel problem: commutation rows for
// every beta_s of degree <= t-2 and axis pair k<l, one forced-zero row per
// nu slot that writes an existing basis monomial, and one row per input
// polynomial. Columns are nu_j^k, j = 1..r_{t-1} outer, k = 1..n inner.
template <class S>
KtAssembly<S> assemble_Kt(const PolySystem<S>& system, const MultiplicityStructure<S>& st,
                          std::uint32_t t) {
    if (t == 0) throw std::invalid_argument("assemble_Kt: degree must be >= 1");
    const std::size_t n = st.nvars();
    const std::size_t r = st.basis.size();
    KtAssembly<S> out;
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < n; ++k) out.cols.emplace_back(j, k);
    const std::size_t ncols = out.cols.size();

    std::vector<std::vector<S>> rows;
    auto blank = [&] { return std::vector<S>(ncols, scalar_traits<S>::zero()); };

    // commutation rows
    for (std::size_t s = 0; s < r; ++s) {
        if (degree(st.basis[s]) + 2 > t) continue;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l) {
                auto row = blank();
                for (std::size_t j = 0; j < r; ++j) {
                    auto dj = degree(st.basis[j]);
                    if (!(degree(st.basis[s]) < dj && dj < t)) continue;
                    row[j * n + k] += st.mu_of_exponent(j, add_unit(st.basis[s], l));
                    row[j * n + l] -= st.mu_of_exponent(j, add_unit(st.basis[s], k));
                }
                rows.push_back(std::move(row));
                out.row_labels.push_back({RowKind::Commutation, s, k, l});
            }
    }
    out.comm_rows = rows.size();

    // forced-zero rows: integrating dual j along axis k writes an existing
    // basis monomial, so that coefficient slot must vanish
    std::set<ExponentVector> in_basis(st.basis.begin(), st.basis.end());
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (in_basis.count(add_unit(st.basis[j], k))) {
                auto row = blank();
                row[j * n + k] = scalar_traits<S>::one();
                rows.push_back(std::move(row));
                out.row_labels.push_back({RowKind::PivotExclusion, 0, k, 0, j});
            }
    out.h_rows = rows.size();

    // system rows: the candidate functional annihilates every f_l
    for (std::size_t fi = 0; fi < system.size(); ++fi) {
        auto taylor = system[fi].taylor_at(std::span<const S>(st.point), t);
        auto row = blank();
        for (std::size_t ci = 0; ci < ncols; ++ci) {
            auto [j, k] = out.cols[ci];
            row[ci] = eval_dual_taylor(truncated_integral(st.duals[j], k), taylor);
        }
        rows.push_back(std::move(row));
        KtRowLabel lab;
        lab.kind = RowKind::SystemRow;
        lab.f = fi;
        out.row_labels.push_back(lab);
    }

    out.k_matrix = Matrix<S>(rows.size(), ncols, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j2 = 0; j2 < ncols; ++j2) out.k_matrix(i, j2) = rows[i][j2];
    return out;
}

namespace detail {

template <class S>
struct KernelVectors {
    std::vector<std::vector<S>> vectors;
    std::vector<Real> singular_values; // empty in exact mode
};

inline KernelVectors<Complex> kernel_of(const Matrix<Complex>& m, const Real& eps) {
    auto kr = numeric_kernel(m, eps);
    return {std::move(kr.kernel), std::move(kr.singular_values)};
}

inline KernelVectors<Rational> kernel_of(const Matrix<Rational>& m, const Real&) {
    return {exact_kernel(m), {}};
}

} // namespace detail

struct IntegrationStepInfo {
    bool stabilized = false;
    std::size_t new_elements = 0;
    std::optional<Real> sigma_min; // smallest singular value seen (numeric mode)
    std::pair<std::size_t, std::size_t> k_shape{0, 0};
};

// One degree-t iteration: solve the kernel problem, and when the kernel is
// nontrivial pick new basis exponents among the admissible degree-t monomials
// (those whose strict divisors already lie in B) by largest coefficient
// magnitude, treating magnitudes within a factor 2 as ties broken toward the
// first monomial in term order; then reduce the kernel to dual-echelon form.
template <class S>
IntegrationStepInfo integration_step(const PolySystem<S>& system, MultiplicityStructure<S>& st,
                                     std::uint32_t t, const Real& eps) {
    using traits = scalar_traits<S>;
    using Mag = typename traits::magnitude_type;
    if (!st.basis.empty() && !is_closed_under_division(st.basis))
        throw std::invalid_argument("integration_step: basis not closed under division");

    const std::size_t n = st.nvars();
    auto asm_t = assemble_Kt(system, st, t);
    auto ker = detail::kernel_of(asm_t.k_matrix, eps);

    IntegrationStepInfo info;
    info.k_shape = {asm_t.k_matrix.rows(), asm_t.k_matrix.cols()};
    st.k_dims.push_back(info.k_shape);
    if (!ker.singular_values.empty()) info.sigma_min = ker.singular_values.back();

    if (ker.vectors.empty()) {
        info.stabilized = true;
        return info;
    }
    const std::size_t h = ker.vectors.size();

    // candidate duals and their degree-t coefficient table
    std::vector<DualElement<S>> cands;
    for (const auto& v : ker.vectors) {
        DualElement<S> d(n);
        d.anchor = st.point;
        for (std::size_t ci = 0; ci < asm_t.cols.size(); ++ci) {
            auto [j, k] = asm_t.cols[ci];
            if (traits::is_zero(v[ci])) continue;
            d.add_scaled(truncated_integral(st.duals[j], k), v[ci]);
        }
        cands.push_back(std::move(d));
    }

    auto all_t = exponents_of_degree(n, t);
    std::set<ExponentVector> in_basis(st.basis.begin(), st.basis.end());
    std::vector<ExponentVector> admissible;
    for (const auto& a : all_t) {
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k)
            if (a[k] > 0 && !in_basis.count(sub_unit(a, k))) ok = false;
        if (ok) admissible.push_back(a);
    }

    Matrix<S> C(h, all_t.size(), traits::zero());
    Matrix<S> V(h, asm_t.cols.size(), traits::zero());
    for (std::size_t m = 0; m < h; ++m) {
        for (std::size_t c = 0; c < all_t.size(); ++c) C(m, c) = dual_coeff(cands[m], all_t[c]);
        for (std::size_t c = 0; c < asm_t.cols.size(); ++c) V(m, c) = ker.vectors[m][c];
    }
    std::map<ExponentVector, std::size_t, TermLess> col_of;
    for (std::size_t c = 0; c < all_t.size(); ++c) col_of[all_t[c]] = c;

    // Gauss-Jordan with admissible-column pivoting
    std::vector<ExponentVector> pivots;
    std::set<ExponentVector> used;
    for (std::size_t m = 0; m < h; ++m) {
        Mag maxmag(0);
        for (const auto& a : admissible) {
            if (used.count(a)) continue;
            Mag v = traits::magnitude(C(m, col_of[a]));
            if (v > maxmag) maxmag = v;
        }
        bool too_small;
        if constexpr (traits::is_exact) {
            too_small = maxmag.is_zero();
        } else {
            too_small = maxmag <= Real(1000) * unit_roundoff();
        }
        if (too_small)
            throw std::runtime_error(
                "integration_step: kernel found but no admissible pivot keeps the basis closed "
                "under division (degree " + std::to_string(t) + ")");
        std::optional<ExponentVector> pick;
        std::size_t tie_count = 0;
        for (const auto& a : admissible) {
            if (used.count(a)) continue;
            Mag v = traits::magnitude(C(m, col_of[a]));
            if (v + v >= maxmag) { // within factor 2 of the max: a tie candidate
                ++tie_count;
                if (!pick) pick = a; // admissible is in term order, first wins
            }
        }
        if (tie_count > 1) {
            std::ostringstream os;
            os << "degree " << t << ": " << tie_count
               << " pivot candidates within factor 2; kept the first in term order";
            st.pivot_notes.push_back(os.str());
        }
        const ExponentVector piv = *pick;
        used.insert(piv);
        pivots.push_back(piv);
        const std::size_t pc = col_of[piv];
        S inv = traits::one() / C(m, pc);
        for (std::size_t c = 0; c < all_t.size(); ++c) C(m, c) *= inv;
        for (std::size_t c = 0; c < asm_t.cols.size(); ++c) V(m, c) *= inv;
        for (std::size_t mm = 0; mm < h; ++mm) {
            if (mm == m || traits::is_zero(C(mm, pc))) continue;
            S f = C(mm, pc);
            for (std::size_t c = 0; c < all_t.size(); ++c) C(mm, c) -= f * C(m, c);
            for (std::size_t c = 0; c < asm_t.cols.size(); ++c) V(mm, c) -= f * V(m, c);
        }
    }

    // a posteriori closure check on the extended exponent set
    {
        std::vector<ExponentVector> ext = st.basis;
        ext.insert(ext.end(), pivots.begin(), pivots.end());
        if (!is_closed_under_division(ext))
            throw std::runtime_error("integration_step: selected pivots break closure under division");
    }

    // append new elements sorted by pivot exponent in term order
    std::vector<std::size_t> order(h);
    for (std::size_t m = 0; m < h; ++m) order[m] = m;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return term_less(pivots[a], pivots[b]); });
    const std::size_t r_old = st.basis.size();
    for (std::size_t oi = 0; oi < h; ++oi) {
        std::size_t m = order[oi];
        std::size_t i_new = r_old + oi;
        st.basis.push_back(pivots[m]);
        DualElement<S> d(n);
        d.anchor = st.point;
        for (std::size_t ci = 0; ci < asm_t.cols.size(); ++ci) {
            auto [j, k] = asm_t.cols[ci];
            st.mu.entries[NuKey{i_new, j, k}] = V(m, ci);
            if (traits::is_zero(V(m, ci))) continue;
            d.add_scaled(truncated_integral(st.duals[j], k), V(m, ci));
        }
        st.duals.push_back(std::move(d));
    }
    info.new_elements = h;
    return info;
}

struct IntegrationOptions {
    std::optional<std::uint32_t> degree_cap; // default 2 * max deg f * n
};

// Full integration method: start from the evaluation functional and extend
// degree by degree until the kernel problem rejects.
template <class S>
MultiplicityStructure<S> compute_multiplicity_structure(const PolySystem<S>& system,
                                                        const std::vector<S>& point, const Real& eps,
                                                        const IntegrationOptions& opts = {}) {
    if (!(eps > 0)) throw std::invalid_argument("tolerance must be positive");
    if (system.empty()) throw std::invalid_argument("empty polynomial system");
    const std::size_t n = point.size();
    for (const auto& f : system)
        if (f.nvars() != n) throw std::invalid_argument("system/point dimension mismatch");

    std::uint32_t maxdeg = 1;
    for (const auto& f : system) maxdeg = std::max(maxdeg, f.total_degree());
    const std::uint32_t cap = opts.degree_cap.value_or(2 * maxdeg * static_cast<std::uint32_t>(n));

    MultiplicityStructure<S> st;
    st.point = point;
    st.basis.push_back(ExponentVector(n, 0));
    auto one = DualElement<S>::evaluation(n, scalar_traits<S>::one());
    one.anchor = point;
    st.duals.push_back(std::move(one));
    st.hilbert.push_back(1);

    for (std::uint32_t t = 1;; ++t) {
        if (t > cap)
            throw std::runtime_error("integration method did not stabilize below the degree cap " +
                                     std::to_string(cap));
        auto info = integration_step(system, st, t, eps);
        if (info.stabilized) {
            st.nil_index = t - 1;
            st.sigma_min_reject = info.sigma_min;
            break;
        }
        st.hilbert.push_back(info.new_elements);
    }
    return st;
}

// Matrices of multiplication by (x_k - xi_k) in the basis B: entry (i,j) is
// mu_{beta_i, beta_j + e_k}, zero whenever deg beta_j >= deg beta_i.
template <class S>
std::vector<Matrix<S>> multiplication_matrices(const MultiplicityStructure<S>& st) {
    const std::size_t r = st.basis.size();
    const std::size_t n = st.nvars();
    std::vector<Matrix<S>> out;
    for (std::size_t k = 0; k < n; ++k) {
        Matrix<S> m(r, r, scalar_traits<S>::zero());
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (degree(st.basis[j]) < degree(st.basis[i]))
                    m(i, j) = st.mu.value(i, j, k);
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace sincert

#endif
