#ifndef SINCERT_DEFLATION_HPP
#define SINCERT_DEFLATION_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sincert/hilbert_param.hpp"
#include "sincert/multiplicity.hpp"
#include "sincert/numeric_linalg.hpp"
#include "sincert/polynomial.hpp"

namespace sincert {

// The deflated system in the combined variables z = (x_1..x_n, mu...): the
// commutation equations in mu alone, and the annihilation equations
// Lambda_i(f_j) in (x, mu). All duality-pinned slots are substituted out.
template <class S>
struct DeflatedSystem {
    std::size_t nx = 0;
    std::vector<ExponentVector> basis;
    PolySystem<S> system; // the input polynomials, in the x variables only

    std::vector<NuKey> mu_slots;         // variable slots, (i,j,k) ascending
    std::map<NuKey, std::size_t> mu_index;
    std::vector<std::string> mu_names;
    std::map<NuKey, int> pinned;         // duality-pinned slots -> 0/1

    std::vector<DualElement<Polynomial<S>>> duals; // parametric, coefficients in the mu part of z

    std::vector<Polynomial<S>> eq_a;                    // commutation equations
    std::vector<std::array<std::size_t, 4>> eq_a_labels; // (i, s, k, l)
    std::vector<Polynomial<S>> eq_c;                    // Lambda_i(f_j)
    std::vector<std::pair<std::size_t, std::size_t>> eq_c_labels; // (i, j)
    std::vector<std::size_t> g0; // indices into eq_a forced into the square system

    std::size_t nvars() const { return nx + mu_slots.size(); }
    std::size_t equation_count() const { return eq_a.size() + eq_c.size(); }
    const Polynomial<S>& equation(std::size_t idx) const {
        return idx < eq_a.size() ? eq_a[idx] : eq_c[idx - eq_a.size()];
    }
    bool is_annihilation_row(std::size_t idx) const { return idx >= eq_a.size(); }
    std::pair<std::size_t, std::size_t> annihilation_label(std::size_t idx) const {
        return eq_c_labels[idx - eq_a.size()];
    }
    std::string label_string(std::size_t idx) const {
        if (idx < eq_a.size()) {
            auto [i, s, k, l] = eq_a_labels[idx];
            return "commutation(i=" + std::to_string(i + 1) + ",s=" + std::to_string(s + 1) +
                   ",k=" + std::to_string(k + 1) + ",l=" + std::to_string(l + 1) + ")";
        }
        auto [i, j] = annihilation_label(idx);
        return "L" + std::to_string(i + 1) + "(f" + std::to_string(j + 1) + ")";
    }

    // gradient cache, one polynomial per variable and equation
    mutable std::vector<std::vector<Polynomial<S>>> grad_cache;
    const std::vector<Polynomial<S>>& gradient(std::size_t idx) const {
        if (grad_cache.empty()) grad_cache.resize(equation_count());
        if (grad_cache[idx].empty()) {
            const auto& p = equation(idx);
            grad_cache[idx].reserve(nvars());
            for (std::size_t m = 0; m < nvars(); ++m) grad_cache[idx].push_back(p.derivative(m));
        }
        return grad_cache[idx];
    }
};

namespace detail {

template <class S>
Polynomial<S> slot_polynomial(const std::vector<ExponentVector>& basis,
                              const std::map<NuKey, std::size_t>& mu_index, std::size_t nvar,
                              std::size_t i, std::size_t j, std::size_t k) {
    switch (classify_slot(basis, i, j, k)) {
    case SlotKind::FixedOne: return Polynomial<S>::constant(nvar, scalar_traits<S>::one());
    case SlotKind::FixedZero: return Polynomial<S>(nvar);
    default: return Polynomial<S>::variable(nvar, mu_index.at(NuKey{i, j, k}));
    }
}

} // namespace detail

// Row labels of the selected invertible commutation blocks, one set per
// degree; used to pin the G_0 rows of the square system.
using AregRowSets = std::map<std::uint32_t, std::vector<std::array<std::size_t, 3>>>;

inline AregRowSets areg_row_sets(const RegularityCertificate& cert) {
    AregRowSets out;
    for (const auto& rec : cert.phi.degrees) out[rec.t] = rec.areg_rows;
    return out;
}

// Build the deflated equations for a primal basis: the pairwise derivation
// commutation residuals (quadratic in mu) and the annihilation polynomials
// Lambda_i(f_j), with the parametric duals expanded recursively. When A_reg
// row sets are supplied, G_0 collects for every element of degree t the
// commutation rows selected at degree t; otherwise every commutation
// equation is kept in G_0.
template <class S>
DeflatedSystem<S> build_deflated_system(const PolySystem<S>& system,
                                        const std::vector<ExponentVector>& basis,
                                        const AregRowSets* areg_rows = nullptr) {
    if (!is_closed_under_division(basis))
        throw std::invalid_argument("build_deflated_system: basis not closed under division");
    DeflatedSystem<S> out;
    out.nx = basis.empty() ? 0 : basis.front().size();
    out.basis = basis;
    out.system = system;

    MuUniverse uni = build_mu_universe(basis);
    out.mu_slots = uni.slots;
    out.mu_names = uni.names;
    const std::size_t nvar = out.nx + uni.size();
    for (std::size_t s = 0; s < uni.slots.size(); ++s) out.mu_index[uni.slots[s]] = out.nx + s;
    for (std::size_t i = 1; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (degree(basis[j]) >= degree(basis[i])) continue;
            for (std::size_t k = 0; k < out.nx; ++k) {
                auto kind = classify_slot(basis, i, j, k);
                if (kind == SlotKind::FixedOne) out.pinned[NuKey{i, j, k}] = 1;
                if (kind == SlotKind::FixedZero) out.pinned[NuKey{i, j, k}] = 0;
            }
        }

    auto slot = [&](std::size_t i, std::size_t j, std::size_t k) {
        return detail::slot_polynomial<S>(basis, out.mu_index, nvar, i, j, k);
    };

    // parametric duals
    out.duals.push_back(DualElement<Polynomial<S>>::evaluation(
        out.nx, Polynomial<S>::constant(nvar, scalar_traits<S>::one())));
    for (std::size_t i = 1; i < basis.size(); ++i) {
        DualElement<Polynomial<S>> lam(out.nx);
        for (std::size_t j = 0; j < i; ++j) {
            if (degree(basis[j]) >= degree(basis[i])) continue;
            for (std::size_t k = 0; k < out.nx; ++k) {
                auto nu = slot(i, j, k);
                if (nu.is_zero()) continue;
                auto integ = truncated_integral(out.duals[j], k);
                for (const auto& [a, c] : integ.coeffs) lam.add_term(a, c * nu);
            }
        }
        out.duals.push_back(std::move(lam));
    }

    // commutation equations
    for (std::size_t i = 1; i < basis.size(); ++i)
        for (std::size_t s = 0; s < basis.size(); ++s) {
            if (degree(basis[s]) >= degree(basis[i])) continue;
            bool nonempty = false;
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (degree(basis[s]) < degree(basis[j]) && degree(basis[j]) < degree(basis[i]))
                    nonempty = true;
            if (!nonempty) continue;
            for (std::size_t k = 0; k < out.nx; ++k)
                for (std::size_t l = k + 1; l < out.nx; ++l) {
                    Polynomial<S> p(nvar);
                    for (std::size_t j = 0; j < basis.size(); ++j) {
                        auto dj = degree(basis[j]);
                        if (!(degree(basis[s]) < dj && dj < degree(basis[i]))) continue;
                        p += slot(i, j, k) * slot(j, s, l);
                        p -= slot(i, j, l) * slot(j, s, k);
                    }
                    if (p.is_zero()) continue;
                    out.eq_a.push_back(std::move(p));
                    out.eq_a_labels.push_back({i, s, k, l});
                }
        }

    // annihilation equations Lambda_i(f_j) as polynomials in (x, mu)
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < system.size(); ++j) {
            Polynomial<S> p(nvar);
            for (const auto& [a, c] : out.duals[i].coeffs)
                p += c * system[j].normalized_derivative(a).lift(nvar, 0);
            out.eq_c.push_back(std::move(p));
            out.eq_c_labels.emplace_back(i, j);
        }

    // G_0 rows
    if (areg_rows) {
        for (std::size_t e = 0; e < out.eq_a.size(); ++e) {
            auto [i, s, k, l] = out.eq_a_labels[e];
            auto it = areg_rows->find(degree(basis[i]));
            if (it == areg_rows->end()) continue;
            for (const auto& lab : it->second)
                if (lab == std::array<std::size_t, 3>{s, k, l}) {
                    out.g0.push_back(e);
                    break;
                }
        }
    } else {
        for (std::size_t e = 0; e < out.eq_a.size(); ++e) out.g0.push_back(e);
    }
    return out;
}

// Starting point for the numeric solver: the approximate root followed by the
// computed mu values of the variable slots.
template <class S>
std::vector<S> initial_point(const DeflatedSystem<S>& sys, const MultiplicityStructure<S>& st) {
    std::vector<S> z = st.point;
    z.resize(sys.nvars(), scalar_traits<S>::zero());
    for (std::size_t s = 0; s < sys.mu_slots.size(); ++s) {
        auto it = st.mu.entries.find(sys.mu_slots[s]);
        if (it == st.mu.entries.end())
            throw std::invalid_argument("initial_point: structure lacks a mu slot value");
        z[sys.nx + s] = it->second;
    }
    return z;
}

template <class S>
std::vector<S> eval_equations(const DeflatedSystem<S>& sys, const std::vector<S>& z,
                              const std::vector<std::size_t>& idx) {
    std::vector<S> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(sys.equation(i).eval(z));
    return out;
}

template <class S>
Matrix<S> jacobian(const DeflatedSystem<S>& sys, const std::vector<S>& z,
                   const std::vector<std::size_t>& idx) {
    Matrix<S> j(idx.size(), sys.nvars(), scalar_traits<S>::zero());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const auto& g = sys.gradient(idx[r]);
        for (std::size_t c = 0; c < sys.nvars(); ++c) j(r, c) = g[c].eval(z);
    }
    return j;
}

struct SquareSplit {
    std::vector<std::size_t> f0;                                 // combined equation indices
    std::vector<std::size_t> f1;                                 // leftover annihilation rows
    std::vector<std::pair<std::size_t, std::size_t>> omega;      // (dual i, poly j) of F_1
    Real sigma_min_j0{0};
};

// Extract the square subsystem F_0: the G_0 commutation rows always enter;
// the annihilation rows are scanned in their natural (i,j) order and kept
// whenever their Jacobian row at the working point adds tau-independent new
// direction, until the system is square. An explicit removal set overrides
// the scan. The leftover annihilation rows form F_1 with index set Omega.
inline SquareSplit extract_square(const DeflatedSystem<Complex>& sys, const std::vector<Complex>& z,
                                  const Real& tau,
                                  const std::vector<std::pair<std::size_t, std::size_t>>* removal = nullptr) {
    const std::size_t nvar = sys.nvars();
    std::vector<std::size_t> all(sys.equation_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    Matrix<Complex> jf = jacobian(sys, z, all);

    SquareSplit out;
    std::vector<std::size_t> forced;
    for (auto e : sys.g0) forced.push_back(e);

    if (removal) {
        std::set<std::pair<std::size_t, std::size_t>> rm(removal->begin(), removal->end());
        out.f0 = forced;
        for (std::size_t c = 0; c < sys.eq_c.size(); ++c) {
            if (rm.count(sys.eq_c_labels[c])) {
                out.f1.push_back(sys.eq_a.size() + c);
                out.omega.push_back(sys.eq_c_labels[c]);
            } else {
                out.f0.push_back(sys.eq_a.size() + c);
            }
        }
        if (out.f0.size() != nvar)
            throw std::invalid_argument("extract_square: removal set does not leave a square system (" +
                                        std::to_string(out.f0.size()) + " rows for " +
                                        std::to_string(nvar) + " variables)");
    } else {
        std::vector<std::size_t> candidates;
        for (std::size_t c = 0; c < sys.eq_c.size(); ++c) candidates.push_back(sys.eq_a.size() + c);
        auto sel = select_rows_thresholded(jf, forced, candidates, tau, nvar);
        if (sel.forced_dependent)
            throw std::runtime_error("extract_square: G0 rows are numerically dependent at the point");
        if (sel.kept.size() < nvar) {
            throw std::runtime_error("extract_square: rank deficiency, achieved rank " +
                                     std::to_string(sel.kept.size()) + " of " + std::to_string(nvar));
        }
        out.f0 = sel.kept;
        std::set<std::size_t> kept(sel.kept.begin(), sel.kept.end());
        for (std::size_t c = 0; c < sys.eq_c.size(); ++c) {
            std::size_t idx = sys.eq_a.size() + c;
            if (!kept.count(idx)) {
                out.f1.push_back(idx);
                out.omega.push_back(sys.eq_c_labels[c]);
            }
        }
    }

    Matrix<Complex> j0 = jf.select_rows(out.f0);
    out.sigma_min_j0 = sigma_min(j0);
    if (!(out.sigma_min_j0 > tau))
        throw std::runtime_error("extract_square: square Jacobian fails the invertibility threshold");
    return out;
}

template <class S>
struct PerturbationMap {
    std::vector<std::pair<std::size_t, std::size_t>> omega; // (dual i, poly j)
    std::vector<S> values;                                  // epsilon_{j,i} = Lambda_i(f_j) at the point
    Matrix<S> e_matrix;                                     // N x r layout
    PolySystem<S> perturbed;                                // f - E * B_xi, in the x variables
};

// Residual values of the leftover annihilation rows, laid out as the epsilon
// matrix, together with the explicitly perturbed system they define.
template <class S>
PerturbationMap<S> perturbed_residual(const DeflatedSystem<S>& sys,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& omega,
                                      const std::vector<S>& z) {
    PerturbationMap<S> out;
    out.omega = omega;
    out.e_matrix = Matrix<S>(sys.system.size(), sys.basis.size(), scalar_traits<S>::zero());
    out.perturbed = sys.system;
    std::vector<S> xi(z.begin(), z.begin() + sys.nx);
    for (auto [i, j] : omega) {
        // locate the annihilation equation Lambda_i(f_j)
        std::size_t idx = i * sys.system.size() + j;
        if (sys.eq_c_labels[idx] != std::make_pair(i, j))
            throw std::logic_error("perturbed_residual: unexpected equation layout");
        S val = sys.eq_c[idx].eval(z);
        out.values.push_back(val);
        out.e_matrix(j, i) = val;
        // (x - xi)^{beta_i}
        Polynomial<S> mono = Polynomial<S>::constant(sys.nx, scalar_traits<S>::one());
        for (std::size_t m = 0; m < sys.nx; ++m) {
            Polynomial<S> lin = Polynomial<S>::variable(sys.nx, m);
            lin += Polynomial<S>::constant(sys.nx, -xi[m]);
            for (std::uint32_t p = 0; p < sys.basis[i][m]; ++p) mono = mono * lin;
        }
        out.perturbed[j] -= val * mono;
    }
    return out;
}

} // namespace sincert

#endif
