#ifndef SINCERT_DUAL_HPP
#define SINCERT_DUAL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sincert/exponent.hpp"
#include "sincert/polynomial.hpp"
#include "sincert/scalar.hpp"

namespace sincert {

// Coefficient-ring glue so dual elements can carry either plain scalars or
// polynomials in the mu parameters.
template <class C>
struct ring_traits {
    static bool is_zero(const C& c) { return scalar_traits<C>::is_zero(c); }
};
template <class S>
struct ring_traits<Polynomial<S>> {
    static bool is_zero(const Polynomial<S>& p) { return p.is_zero(); }
};

// A finite dual functional anchored at a point xi, stored in the normalized
// basis d^alpha/alpha!. In that basis the coefficient on d^beta/beta! equals
// the value of the functional on the shifted monomial (x-xi)^beta, derivation
// is a downward exponent shift and truncated integration an upward one, with
// no factorial bookkeeping anywhere.
//
// C is the coefficient ring: a scalar for concrete functionals, or a
// Polynomial in the mu parameters for parametric ones (anchor then symbolic).
template <class C>
struct DualElement {
    std::size_t nvars = 0;
    std::map<ExponentVector, C, TermLess> coeffs;
    std::optional<std::vector<C>> anchor; // engaged only for concrete numeric anchors

    DualElement() = default;
    explicit DualElement(std::size_t n) : nvars(n) {}

    // The order-0 functional 1_xi; `one` is the ring unit.
    static DualElement evaluation(std::size_t n, C one) {
        DualElement e(n);
        e.coeffs.emplace(ExponentVector(n, 0), std::move(one));
        return e;
    }

    bool is_zero() const { return coeffs.empty(); }

    std::uint32_t order() const {
        std::uint32_t o = 0;
        for (const auto& [a, c] : coeffs) o = std::max(o, degree(a));
        return o;
    }

    void add_term(const ExponentVector& a, const C& c) {
        if (a.size() != nvars) throw std::invalid_argument("dual exponent dimension mismatch");
        if (ring_traits<C>::is_zero(c)) return;
        auto it = coeffs.find(a);
        if (it == coeffs.end()) {
            coeffs.emplace(a, c);
        } else {
            it->second += c;
            if (ring_traits<C>::is_zero(it->second)) coeffs.erase(it);
        }
    }

    const C* find_coeff(const ExponentVector& a) const {
        auto it = coeffs.find(a);
        return it == coeffs.end() ? nullptr : &it->second;
    }

    DualElement& add_scaled(const DualElement& o, const C& s) {
        if (o.nvars != nvars) throw std::invalid_argument("dual dimension mismatch");
        for (const auto& [a, c] : o.coeffs) add_term(a, c * s);
        return *this;
    }
};

// Scalar convenience: coefficient on d^a/a!, zero when absent.
template <class S>
S dual_coeff(const DualElement<S>& L, const ExponentVector& a) {
    const S* c = L.find_coeff(a);
    return c ? *c : scalar_traits<S>::zero();
}

// d/d_k: coefficient on d^a/a! of the result is the coefficient on
// d^(a+e_k)/(a+e_k)! of the input.
template <class C>
DualElement<C> derive(const DualElement<C>& L, std::size_t k) {
    if (k >= L.nvars) throw std::out_of_range("derivation axis out of range");
    DualElement<C> r(L.nvars);
    r.anchor = L.anchor;
    for (const auto& [a, c] : L.coeffs)
        if (a[k] > 0) r.coeffs.emplace(sub_unit(a, k), c);
    return r;
}

// Truncated integral along axis k: substitute d_{k+1} = ... = d_n = 0, then
// shift every surviving normalized monomial by e_k. The result has no
// constant term and derive(result, k) recovers the truncation of the input.
template <class C>
DualElement<C> truncated_integral(const DualElement<C>& L, std::size_t k) {
    if (k >= L.nvars) throw std::out_of_range("integration axis out of range");
    DualElement<C> r(L.nvars);
    r.anchor = L.anchor;
    for (const auto& [a, c] : L.coeffs) {
        bool killed = false;
        for (std::size_t j = k + 1; j < L.nvars; ++j)
            if (a[j] != 0) { killed = true; break; }
        if (killed) continue;
        r.coeffs.emplace(add_unit(a, k), c);
    }
    return r;
}

// Apply a concrete functional to a polynomial: sum_a c_a d^a p(xi)/a!.
template <class S>
S eval_dual(const DualElement<S>& L, const Polynomial<S>& p) {
    if (L.nvars != p.nvars()) throw std::invalid_argument("dual/polynomial dimension mismatch");
    if (!L.anchor) throw std::invalid_argument("eval_dual requires a concrete numeric anchor");
    auto T = p.taylor_at(std::span<const S>(*L.anchor), L.order());
    S acc = scalar_traits<S>::zero();
    for (const auto& [a, c] : L.coeffs) {
        auto it = T.find(a);
        if (it != T.end()) acc += c * it->second;
    }
    return acc;
}

// Apply against precomputed normalized Taylor coefficients of the target.
template <class S>
S eval_dual_taylor(const DualElement<S>& L, const std::map<ExponentVector, S, TermLess>& taylor) {
    S acc = scalar_traits<S>::zero();
    for (const auto& [a, c] : L.coeffs) {
        auto it = taylor.find(a);
        if (it != taylor.end()) acc += c * it->second;
    }
    return acc;
}

} // namespace sincert

#endif
