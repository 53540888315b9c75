#ifndef SINCERT_POLYNOMIAL_HPP
#define SINCERT_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sincert/exponent.hpp"
#include "sincert/scalar.hpp"

namespace sincert {

// Sparse multivariate polynomial over S (Rational or Complex).
// Terms are kept in graded order; zero coefficients are never stored.
template <class S>
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, S, TermLess>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, S value) {
        Polynomial p(nvars);
        p.add_term(ExponentVector(nvars, 0), std::move(value));
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t k) {
        if (k >= nvars) throw std::invalid_argument("variable index out of range");
        Polynomial p(nvars);
        p.add_term(unit_exponent(nvars, k), scalar_traits<S>::one());
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, degree(e));
        return d;
    }

    void add_term(const ExponentVector& e, S c) {
        if (e.size() != nvars_) throw std::invalid_argument("exponent dimension mismatch");
        if (scalar_traits<S>::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (scalar_traits<S>::is_zero(it->second)) terms_.erase(it);
        }
    }

    S coeff(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? scalar_traits<S>::zero() : it->second;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.nvars_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Polynomial& operator*=(const S& s) {
        if (scalar_traits<S>::is_zero(s)) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        prune();
        return *this;
    }
    friend Polynomial operator*(Polynomial a, const S& s) { a *= s; return a; }
    friend Polynomial operator*(const S& s, Polynomial a) { a *= s; return a; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same_vars(b);
        Polynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                ExponentVector e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    S eval(std::span<const S> point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluation point dimension mismatch");
        S acc = scalar_traits<S>::zero();
        for (const auto& [e, c] : terms_) {
            S t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t p = 0; p < e[i]; ++p) t *= point[i];
            acc += t;
        }
        return acc;
    }
    S eval(const std::vector<S>& point) const { return eval(std::span<const S>(point)); }

    // d/dx_k
    Polynomial derivative(std::size_t k) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[k] == 0) continue;
            r.add_term(sub_unit(e, k), c * scalar_traits<S>::from_int(e[k]));
        }
        return r;
    }

    // d^alpha p / alpha! as a polynomial; the coefficient on x^g is
    // c_{g+alpha} * prod_i binom(g_i+alpha_i, alpha_i), an integer multiple.
    Polynomial normalized_derivative(const ExponentVector& alpha) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            bool ok = true;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] < alpha[i]) { ok = false; break; }
            if (!ok) continue;
            ExponentVector g(nvars_);
            std::uint64_t w = 1;
            for (std::size_t i = 0; i < nvars_; ++i) {
                g[i] = e[i] - alpha[i];
                w *= binom(e[i], alpha[i]);
            }
            r.add_term(g, c * scalar_traits<S>::from_int(static_cast<long>(w)));
        }
        return r;
    }

    // Normalized Taylor coefficients at `point`: T[alpha] = d^alpha p(point)/alpha!
    // for |alpha| <= maxdeg.
    std::map<ExponentVector, S, TermLess> taylor_at(std::span<const S> point, std::uint32_t maxdeg) const {
        if (point.size() != nvars_) throw std::invalid_argument("taylor point dimension mismatch");
        std::map<ExponentVector, S, TermLess> T;
        ExponentVector alpha(nvars_, 0);
        taylor_rec(0, alpha, point, maxdeg, T);
        return T;
    }

    // Same polynomial over a larger variable tuple, variable i -> offset+i.
    Polynomial lift(std::size_t new_nvars, std::size_t offset = 0) const {
        if (offset + nvars_ > new_nvars) throw std::invalid_argument("lift does not fit");
        Polynomial r(new_nvars);
        for (const auto& [e, c] : terms_) {
            ExponentVector g(new_nvars, 0);
            for (std::size_t i = 0; i < nvars_; ++i) g[offset + i] = e[i];
            r.terms_.emplace(g, c);
        }
        return r;
    }

    std::string str(std::span<const std::string> varnames) const;
    std::string str() const;

private:
    void require_same_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial variable count mismatch");
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = scalar_traits<S>::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    static std::uint64_t binom(std::uint32_t n, std::uint32_t k) {
        if (k > n) return 0;
        k = std::min(k, n - k);
        std::uint64_t r = 1;
        for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    }
    void taylor_rec(std::size_t pos, ExponentVector& alpha, std::span<const S> point,
                    std::uint32_t maxdeg, std::map<ExponentVector, S, TermLess>& T) const {
        if (degree(alpha) > maxdeg) return;
        if (pos == nvars_) {
            S v = normalized_derivative(alpha).eval(point);
            if (!scalar_traits<S>::is_zero(v)) T.emplace(alpha, std::move(v));
            return;
        }
        std::uint32_t cap = total_degree();
        for (std::uint32_t v = 0; degree(alpha) + v <= std::min(maxdeg, cap); ++v) {
            alpha[pos] = v;
            taylor_rec(pos + 1, alpha, point, maxdeg, T);
        }
        alpha[pos] = 0;
    }

    std::size_t nvars_;
    TermMap terms_;
};

namespace detail {
inline std::string coeff_repr(const Rational& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}
inline std::string coeff_repr(const Complex& c) { return to_string(c, working_digits()); }
inline bool coeff_is_one(const Rational& c) { return c == 1; }
inline bool coeff_is_minus_one(const Rational& c) { return c == -1; }
inline bool coeff_is_one(const Complex& c) { return c.im.is_zero() && c.re == 1; }
inline bool coeff_is_minus_one(const Complex& c) { return c.im.is_zero() && c.re == -1; }
} // namespace detail

template <class S>
std::string Polynomial<S>::str(std::span<const std::string> varnames) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest-degree terms first, the way systems are usually written
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += varnames[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = detail::coeff_repr(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            first = false;
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        if (mono.empty()) {
            os << cs;
        } else if (cs == "1") {
            os << mono;
        } else {
            os << cs << "*" << mono;
        }
    }
    return os.str();
}

template <class S>
std::string Polynomial<S>::str() const {
    std::vector<std::string> names;
    names.reserve(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i + 1));
    return str(names);
}

template <class S>
using PolySystem = std::vector<Polynomial<S>>;

inline Polynomial<Complex> to_complex_poly(const Polynomial<Rational>& p) {
    Polynomial<Complex> r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, Complex(Real(c)));
    return r;
}

inline std::vector<Polynomial<Complex>> to_complex_system(const std::vector<Polynomial<Rational>>& f) {
    std::vector<Polynomial<Complex>> r;
    r.reserve(f.size());
    for (const auto& p : f) r.push_back(to_complex_poly(p));
    return r;
}

} // namespace sincert

#endif
