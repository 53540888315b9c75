#ifndef SINCERT_HILBERT_PARAM_HPP
#define SINCERT_HILBERT_PARAM_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sincert/dual.hpp"
#include "sincert/exact_linalg.hpp"
#include "sincert/exponent.hpp"
#include "sincert/multiplicity.hpp"
#include "sincert/rational_function.hpp"

namespace sincert {

// Structural role of a nu slot (i,j,k) relative to the basis: writing an
// existing basis monomial pins the coefficient by duality; one distinguished
// occurrence per monomial (its first-axis decomposition) carries the 0/1
// value, every other slot stays a variable.
enum class SlotKind { FixedZero, FixedOne, Variable };

inline SlotKind classify_slot(const std::vector<ExponentVector>& basis, std::size_t i, std::size_t j,
                              std::size_t k) {
    const ExponentVector target = add_unit(basis[j], k);
    const auto di = degree(basis[i]);
    for (std::size_t l = 0; l < basis.size(); ++l) {
        if (basis[l] != target) continue;
        if (degree(target) < di) return SlotKind::FixedZero; // lower-degree basis monomial
        // same-degree basis monomial: only the first-axis decomposition is pinned
        std::size_t ka = first_axis(target);
        if (k == ka && basis[j] == sub_unit(target, ka))
            return l == i ? SlotKind::FixedOne : SlotKind::FixedZero;
        return SlotKind::Variable;
    }
    return SlotKind::Variable;
}

// The ordered mu-variable universe of a basis: all non-pinned slots (i,j,k)
// with deg beta_j < deg beta_i. Display names follow the usual per-element
// numbering mu[i,l], l counting that element's variable slots.
struct MuUniverse {
    std::vector<NuKey> slots;
    std::map<NuKey, std::size_t> index;
    std::vector<std::string> names;

    std::size_t size() const { return slots.size(); }
};

inline MuUniverse build_mu_universe(const std::vector<ExponentVector>& basis) {
    MuUniverse u;
    std::vector<std::size_t> per_element(basis.size(), 0);
    for (std::size_t i = 1; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (degree(basis[j]) >= degree(basis[i])) continue;
            for (std::size_t k = 0; k < basis[i].size(); ++k)
                if (classify_slot(basis, i, j, k) == SlotKind::Variable) {
                    NuKey key{i, j, k};
                    u.index[key] = u.slots.size();
                    u.slots.push_back(key);
                    u.names.push_back("mu[" + std::to_string(i + 1) + "," +
                                      std::to_string(++per_element[i]) + "]");
                }
        }
    return u;
}

struct AregRecord {
    std::uint32_t t = 0;
    std::size_t h_t = 0;        // new basis monomials at degree t
    std::size_t rho = 0;        // rank of H_t over Q(mu)
    std::size_t kernel_dim = 0; // solution freedom of H_t nu = 0
    std::size_t gamma_t = 0;    // h_t * (kernel_dim - h_t)
    std::vector<std::array<std::size_t, 3>> h_row_labels;    // all commutation rows (s,k,l)
    std::vector<std::array<std::size_t, 3>> areg_rows;       // selected row labels
    std::vector<std::pair<std::size_t, std::size_t>> areg_cols; // selected columns (j,k)
    RationalFunction det;                                    // canonical row/col order
    std::vector<std::array<std::size_t, 3>> witness_rows;    // non-selected rows
    std::vector<std::vector<RationalFunction>> witnesses;    // coefficients over selected rows
};

// Rational parametrization of the dual bases carried by B: every mu slot as
// an element of Q(mu_bar) in the free parameters.
struct Parametrization {
    std::size_t nx = 0;
    std::vector<ExponentVector> basis;
    MuUniverse universe;
    std::vector<bool> is_free;                  // per universe slot
    std::map<NuKey, RationalFunction> values;   // every universe slot
    std::vector<DualElement<RationalFunction>> duals; // parametric Lambda's
    std::vector<AregRecord> degrees;
    std::uint32_t completed_degree = 0;

    std::size_t free_count() const {
        std::size_t c = 0;
        for (bool b : is_free) c += b;
        return c;
    }
    std::vector<std::string> free_names() const {
        std::vector<std::string> out;
        for (std::size_t s = 0; s < universe.size(); ++s)
            if (is_free[s]) out.push_back(universe.names[s]);
        return out;
    }
    // Value of any slot, pinned ones included.
    RationalFunction slot_value(std::size_t i, std::size_t j, std::size_t k) const {
        auto it = values.find(NuKey{i, j, k});
        if (it != values.end()) return it->second;
        switch (classify_slot(basis, i, j, k)) {
        case SlotKind::FixedOne: return RationalFunction::constant(universe.size(), Rational(1));
        case SlotKind::FixedZero: return RationalFunction::constant(universe.size(), Rational(0));
        default: throw std::logic_error("slot missing from parametrization");
        }
    }
};

struct RegularityCertificate {
    std::vector<ExponentVector> basis;
    bool regular = false;
    std::uint32_t failing_degree = 0; // meaningful when !regular
    std::string reason;
    Parametrization phi;
};

inline Parametrization make_trivial_parametrization(std::size_t nx,
                                                    const std::vector<ExponentVector>& basis) {
    Parametrization phi;
    phi.nx = nx;
    phi.basis = basis;
    phi.universe = build_mu_universe(basis);
    phi.is_free.assign(phi.universe.size(), false);
    auto one = RationalFunction::constant(phi.universe.size(), Rational(1));
    phi.duals.push_back(DualElement<RationalFunction>::evaluation(nx, one));
    return phi;
}

namespace detail {

struct HtExact {
    std::vector<std::pair<std::size_t, std::size_t>> cols; // non-excluded (j,k)
    std::vector<std::array<std::size_t, 3>> row_labels;    // (s,k,l)
    Matrix<RationalFunction> h;                            // entries over Q(mu)
};

// H_t over Q(mu_bar): commutation rows in the columns that are not pinned to
// an existing basis monomial of lower degree.
inline HtExact assemble_Ht_exact(const Parametrization& phi, std::uint32_t t, std::size_t r_prev) {
    const std::size_t n = phi.nx;
    HtExact out;
    std::set<ExponentVector> old_basis(phi.basis.begin(), phi.basis.begin() + r_prev);
    for (std::size_t j = 0; j < r_prev; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (!old_basis.count(add_unit(phi.basis[j], k))) out.cols.emplace_back(j, k);

    std::vector<std::vector<RationalFunction>> rows;
    const RationalFunction zero(QPoly(phi.universe.size()));
    for (std::size_t s = 0; s < r_prev; ++s) {
        if (degree(phi.basis[s]) + 2 > t) continue;
        bool nonempty = false;
        for (std::size_t j = 0; j < r_prev; ++j)
            if (degree(phi.basis[s]) < degree(phi.basis[j]) && degree(phi.basis[j]) < t)
                nonempty = true;
        if (!nonempty) continue;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l) {
                std::vector<RationalFunction> row(out.cols.size(), zero);
                for (std::size_t ci = 0; ci < out.cols.size(); ++ci) {
                    auto [j, kk] = out.cols[ci];
                    auto dj = degree(phi.basis[j]);
                    if (!(degree(phi.basis[s]) < dj && dj < t)) continue;
                    if (kk == k) {
                        const auto* c = phi.duals[j].find_coeff(add_unit(phi.basis[s], l));
                        if (c) row[ci] += *c;
                    }
                    if (kk == l) {
                        const auto* c = phi.duals[j].find_coeff(add_unit(phi.basis[s], k));
                        if (c) row[ci] -= *c;
                    }
                }
                rows.push_back(std::move(row));
                out.row_labels.push_back({s, k, l});
            }
    }
    out.h = Matrix<RationalFunction>(rows.size(), out.cols.size(), zero);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < out.cols.size(); ++j) out.h(i, j) = rows[i][j];
    return out;
}

// Clear denominators row by row; returns the polynomial matrix and the
// multiplier applied to each row.
inline std::pair<Matrix<QPoly>, std::vector<RationalFunction>>
clear_denominators(const Matrix<RationalFunction>& m, std::size_t nvars) {
    Matrix<QPoly> p(m.rows(), m.cols(), QPoly(nvars));
    std::vector<RationalFunction> mult(m.rows(), RationalFunction::constant(nvars, Rational(1)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        QPoly d = QPoly::constant(nvars, Rational(1));
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const QPoly& dj = m(i, j).den();
            if (dj.total_degree() == 0 && leading_coeff(dj) == 1) continue;
            if (divide_exact(d, dj)) continue; // already a factor
            d = d * dj;
        }
        mult[i] = RationalFunction(d);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            RationalFunction scaled = m(i, j) * mult[i];
            auto q = divide_exact(scaled.num(), scaled.den());
            if (!q) throw std::logic_error("denominator clearing failed");
            p(i, j) = std::move(*q);
        }
    }
    return {std::move(p), std::move(mult)};
}

inline RationalFunction det_of_selection(const Matrix<RationalFunction>& h,
                                         const std::vector<std::size_t>& rows,
                                         const std::vector<std::size_t>& cols, std::size_t nvars) {
    Matrix<RationalFunction> sub(rows.size(), cols.size(), RationalFunction(QPoly(nvars)));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = h(rows[i], cols[j]);
    auto [p, mult] = clear_denominators(sub, nvars);
    RationalFunction det(bareiss_det(p));
    for (const auto& m : mult) det /= m;
    return det;
}

} // namespace detail

struct ParametrizeStepResult {
    bool regular = true;
    std::string reason;
};

// One degree of the rational parametrization: decompose the commutation
// system, solve the dependent slots generically, introduce the new free
// parameters, and extend the parametric duals.
inline ParametrizeStepResult parametrize_step(Parametrization& phi, std::uint32_t t) {
    const std::size_t n = phi.nx;
    const std::size_t nv = phi.universe.size();
    std::size_t r_prev = 0, r_t = 0;
    for (const auto& b : phi.basis) {
        if (degree(b) < t) ++r_prev;
        if (degree(b) <= t) ++r_t;
    }
    std::vector<std::size_t> new_elements;
    for (std::size_t i = r_prev; i < r_t; ++i) new_elements.push_back(i);
    if (phi.is_free.size() != nv) phi.is_free.assign(nv, false);

    auto ht = detail::assemble_Ht_exact(phi, t, r_prev);

    // nu'' columns: first-axis representatives of the new basis monomials
    std::set<std::size_t> rep_cols;
    std::map<std::size_t, std::size_t> rep_col_of_element; // column -> element index
    for (std::size_t i : new_elements) {
        std::size_t ka = first_axis(phi.basis[i]);
        ExponentVector below = sub_unit(phi.basis[i], ka);
        bool found = false;
        for (std::size_t ci = 0; ci < ht.cols.size(); ++ci)
            if (phi.basis[ht.cols[ci].first] == below && ht.cols[ci].second == ka) {
                rep_cols.insert(ci);
                rep_col_of_element[ci] = i;
                found = true;
            }
        if (!found) return {false, "basis monomial has no divisor column; basis not closed"};
    }

    auto [hp, row_mult] = detail::clear_denominators(ht.h, nv);

    std::vector<std::size_t> allowed, all_cols;
    for (std::size_t c = 0; c < ht.cols.size(); ++c) {
        all_cols.push_back(c);
        if (!rep_cols.count(c)) allowed.push_back(c);
    }
    auto ech = bareiss_echelon(hp, allowed);
    auto ech_all = bareiss_echelon(hp, all_cols);
    if (ech_all.rank > ech.rank)
        return {false, "the duality-pinned columns are needed to span the column space"};

    const std::size_t rho = ech.rank;
    AregRecord rec;
    rec.t = t;
    rec.h_t = new_elements.size();
    rec.rho = rho;
    rec.kernel_dim = ht.cols.size() - rho;
    rec.gamma_t = rec.h_t * (rec.kernel_dim - rec.h_t);
    rec.h_row_labels = ht.row_labels;

    // canonical ordering of the selected rows and columns
    std::vector<std::size_t> sel_rows = ech.pivot_rows;
    std::vector<std::size_t> sel_cols = ech.pivot_cols;
    std::sort(sel_rows.begin(), sel_rows.end());
    std::sort(sel_cols.begin(), sel_cols.end());
    for (auto rI : sel_rows) rec.areg_rows.push_back(ht.row_labels[rI]);
    for (auto cI : sel_cols) rec.areg_cols.push_back(ht.cols[cI]);
    if (rho > 0) rec.det = detail::det_of_selection(ht.h, sel_rows, sel_cols, nv);
    else rec.det = RationalFunction::constant(nv, Rational(1));

    // Solve the pinned system: for every non-pivot column c, the coefficient
    // vector of nu_c inside each pivot variable; A_reg x = -H[sel_rows, c].
    Matrix<QPoly> areg(rho, rho, QPoly(nv));
    std::vector<RationalFunction> sel_mult(rho, RationalFunction::constant(nv, Rational(1)));
    {
        Matrix<RationalFunction> sub(rho, rho, RationalFunction(QPoly(nv)));
        for (std::size_t i = 0; i < rho; ++i)
            for (std::size_t j = 0; j < rho; ++j) sub(i, j) = ht.h(sel_rows[i], sel_cols[j]);
        auto cleared = detail::clear_denominators(sub, nv);
        areg = std::move(cleared.first);
        sel_mult = std::move(cleared.second);
    }
    std::map<std::size_t, std::vector<RationalFunction>> dependence; // free col -> coeffs per pivot col
    for (std::size_t c = 0; c < ht.cols.size(); ++c) {
        if (std::find(sel_cols.begin(), sel_cols.end(), c) != sel_cols.end()) continue;
        std::vector<RationalFunction> rhs;
        rhs.reserve(rho);
        for (std::size_t i = 0; i < rho; ++i) rhs.push_back(-(ht.h(sel_rows[i], c) * sel_mult[i]));
        dependence[c] = rho ? solve_rational(areg, rhs) : std::vector<RationalFunction>{};
    }
    // membership witness for every non-selected row: coefficients c with
    // sum_m c_m row_{sel_m} = row, solved on the selected columns and then
    // verified exactly on all columns
    for (std::size_t rI = 0; rI < ht.h.rows(); ++rI) {
        if (std::find(sel_rows.begin(), sel_rows.end(), rI) != sel_rows.end()) continue;
        std::vector<RationalFunction> w;
        if (rho > 0) {
            Matrix<RationalFunction> at_rf(rho, rho, RationalFunction(QPoly(nv)));
            for (std::size_t i = 0; i < rho; ++i)
                for (std::size_t j = 0; j < rho; ++j) at_rf(i, j) = ht.h(sel_rows[j], sel_cols[i]);
            auto cleared = detail::clear_denominators(at_rf, nv);
            std::vector<RationalFunction> rhs2;
            rhs2.reserve(rho);
            for (std::size_t i = 0; i < rho; ++i)
                rhs2.push_back(ht.h(rI, sel_cols[i]) * cleared.second[i]);
            w = solve_rational(cleared.first, rhs2);
        }
        for (std::size_t c = 0; c < ht.cols.size(); ++c) {
            RationalFunction acc{QPoly(nv)};
            for (std::size_t m = 0; m < rho; ++m) acc += w[m] * ht.h(sel_rows[m], c);
            if (!(acc == ht.h(rI, c)))
                return {false, "row outside the span of the selected rows at degree " +
                                   std::to_string(t)};
        }
        rec.witness_rows.push_back(ht.row_labels[rI]);
        rec.witnesses.push_back(std::move(w));
    }

    // extend the parametric duals, one per new basis monomial
    for (std::size_t i : new_elements) {
        std::map<std::size_t, RationalFunction> colval; // H column -> value for this element
        for (std::size_t c = 0; c < ht.cols.size(); ++c) {
            if (rep_cols.count(c)) {
                colval[c] = RationalFunction::constant(
                    nv, Rational(rep_col_of_element[c] == i ? 1 : 0));
            } else if (std::find(sel_cols.begin(), sel_cols.end(), c) == sel_cols.end()) {
                // free parameter mu_{(i, j, k)}
                auto [j, k] = ht.cols[c];
                auto it = phi.universe.index.find(NuKey{i, j, k});
                if (it == phi.universe.index.end())
                    throw std::logic_error("free slot missing from the mu universe");
                phi.is_free[it->second] = true;
                colval[c] = RationalFunction(QPoly::variable(nv, it->second));
            }
        }
        for (std::size_t m = 0; m < rho; ++m) {
            RationalFunction v{QPoly(nv)};
            for (auto& [c, val] : colval) {
                if (val.is_zero()) continue;
                v += dependence[c][m] * val;
            }
            colval[sel_cols[m]] = std::move(v);
        }
        DualElement<RationalFunction> lam(n);
        for (std::size_t c = 0; c < ht.cols.size(); ++c) {
            auto [j, k] = ht.cols[c];
            auto it = colval.find(c);
            if (it == colval.end() || it->second.is_zero()) {
                phi.values[NuKey{i, j, k}] = RationalFunction(QPoly(nv));
                continue;
            }
            phi.values[NuKey{i, j, k}] = it->second;
            lam.add_scaled(truncated_integral(phi.duals[j], k), it->second);
        }
        // slots pinned by duality are recorded implicitly via slot_value()
        phi.duals.push_back(std::move(lam));
    }

    phi.degrees.push_back(std::move(rec));
    phi.completed_degree = t;
    return {true, ""};
}

// Purely symbolic regularity certificate for a primal basis: run the
// parametrization degree by degree with exact elimination; regular iff every
// degree admits the pinned decomposition and all rows stay in the span of the
// selected ones.
inline RegularityCertificate certify_regular_basis(const std::vector<ExponentVector>& basis,
                                                   std::size_t nx) {
    if (!is_closed_under_division(basis))
        throw std::invalid_argument("certify_regular_basis: basis not closed under division");
    RegularityCertificate cert;
    cert.basis = basis;
    cert.phi = make_trivial_parametrization(nx, basis);
    std::uint32_t maxdeg = 0;
    for (const auto& b : basis) maxdeg = std::max(maxdeg, degree(b));
    for (std::uint32_t t = 1; t <= maxdeg; ++t) {
        auto step = parametrize_step(cert.phi, t);
        if (!step.regular) {
            cert.regular = false;
            cert.failing_degree = t;
            cert.reason = step.reason;
            return cert;
        }
    }
    cert.regular = true;
    return cert;
}

inline Complex to_complex_value(const Complex& v) { return v; }
inline Complex to_complex_value(const Rational& v) { return Complex(Real(v)); }

// Numeric instantiation of each recorded A_reg,t at the mu values of a
// computed structure (entries are direct coefficient reads).
template <class S>
std::vector<Matrix<Complex>> evaluate_Areg(const RegularityCertificate& cert,
                                           const MultiplicityStructure<S>& st) {
    if (!cert.regular) throw std::invalid_argument("evaluate_Areg: certificate is not regular");
    if (st.basis != cert.basis) throw std::invalid_argument("evaluate_Areg: basis mismatch");
    std::vector<Matrix<Complex>> out;
    for (const auto& rec : cert.phi.degrees) {
        Matrix<Complex> m(rec.areg_rows.size(), rec.areg_cols.size());
        for (std::size_t ri = 0; ri < rec.areg_rows.size(); ++ri) {
            auto [s, k, l] = rec.areg_rows[ri];
            for (std::size_t ci = 0; ci < rec.areg_cols.size(); ++ci) {
                auto [j, kk] = rec.areg_cols[ci];
                Complex v;
                if (kk == k) v += to_complex_value(st.mu_of_exponent(j, add_unit(cert.basis[s], l)));
                if (kk == l) v -= to_complex_value(st.mu_of_exponent(j, add_unit(cert.basis[s], k)));
                m(ri, ci) = v;
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace sincert

#endif
