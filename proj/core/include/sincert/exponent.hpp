#ifndef SINCERT_EXPONENT_HPP
#define SINCERT_EXPONENT_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <vector>

namespace sincert {

// alpha in N^n; the index into a tuple of variables is 0-based throughout.
using ExponentVector = std::vector<std::uint32_t>;

inline std::uint32_t degree(const ExponentVector& a) {
    return std::accumulate(a.begin(), a.end(), std::uint32_t{0});
}

// Graded order used for term storage and basis listings: lower total degree
// first; within a degree, lexicographically larger exponent first, so that
// x1 precedes x3 the way the benchmark bases are conventionally listed.
inline bool term_less(const ExponentVector& a, const ExponentVector& b) {
    auto da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

struct TermLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const { return term_less(a, b); }
};

inline ExponentVector unit_exponent(std::size_t n, std::size_t k) {
    ExponentVector e(n, 0);
    e[k] = 1;
    return e;
}

inline ExponentVector add_unit(ExponentVector a, std::size_t k) {
    a[k] += 1;
    return a;
}

inline ExponentVector sub_unit(ExponentVector a, std::size_t k) {
    a[k] -= 1;
    return a;
}

// beta! = beta_1! ... beta_n!, as an unsigned 64-bit value (orders stay tiny here).
inline std::uint64_t exponent_factorial(const ExponentVector& a) {
    std::uint64_t f = 1;
    for (auto ai : a)
        for (std::uint32_t v = 2; v <= ai; ++v) f *= v;
    return f;
}

// E is closed under division iff beta - e_k stays in E for every beta in E
// and every axis k with beta_k > 0.
inline bool is_closed_under_division(std::span<const ExponentVector> exps) {
    std::set<ExponentVector> table(exps.begin(), exps.end());
    for (const auto& b : exps)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (b[k] > 0 && !table.count(sub_unit(b, k))) return false;
    return true;
}

inline bool is_closed_under_division(const std::vector<ExponentVector>& exps) {
    return is_closed_under_division(std::span<const ExponentVector>(exps));
}

namespace detail {
inline void enumerate_degree(std::size_t pos, std::uint32_t rem, ExponentVector& cur,
                             std::vector<ExponentVector>& out) {
    if (pos + 1 == cur.size()) {
        cur[pos] = rem;
        out.push_back(cur);
        return;
    }
    for (std::uint32_t v = 0; v <= rem; ++v) {
        cur[pos] = v;
        enumerate_degree(pos + 1, rem - v, cur, out);
    }
    cur[pos] = 0;
}
} // namespace detail

// All exponents of total degree t in n variables, listed in term order.
inline std::vector<ExponentVector> exponents_of_degree(std::size_t n, std::uint32_t t) {
    std::vector<ExponentVector> out;
    ExponentVector cur(n, 0);
    detail::enumerate_degree(0, t, cur, out);
    std::sort(out.begin(), out.end(), TermLess{});
    return out;
}

// All exponents of total degree <= t.
inline std::vector<ExponentVector> exponents_up_to_degree(std::size_t n, std::uint32_t t) {
    std::vector<ExponentVector> out;
    for (std::uint32_t d = 0; d <= t; ++d) {
        auto layer = exponents_of_degree(n, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

// First nonzero axis of beta; the (beta - e_k, k) decomposition used when one
// occurrence among several writing the same monomial must be singled out.
inline std::size_t first_axis(const ExponentVector& b) {
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k] > 0) return k;
    return b.size();
}

} // namespace sincert

#endif
