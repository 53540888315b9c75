#ifndef SINCERT_RATIONAL_FUNCTION_HPP
#define SINCERT_RATIONAL_FUNCTION_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "sincert/polynomial.hpp"

namespace sincert {

using QPoly = Polynomial<Rational>;

// Rational content (gcd of coefficients, as a positive rational).
inline Rational content(const QPoly& p) {
    if (p.is_zero()) return Rational(0);
    Integer num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : p.terms()) {
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(numerator(c)));
        den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
    }
    return Rational(num_gcd, den_lcm);
}

// Leading coefficient in the term order (largest term).
inline Rational leading_coeff(const QPoly& p) {
    if (p.is_zero()) return Rational(0);
    return p.terms().rbegin()->second;
}
inline const ExponentVector& leading_exponent(const QPoly& p) {
    return p.terms().rbegin()->first;
}

// Exact quotient p/d when d divides p; nullopt otherwise.
inline std::optional<QPoly> divide_exact(QPoly p, const QPoly& d) {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    QPoly q(p.nvars());
    const auto& dlead = leading_exponent(d);
    const Rational dc = leading_coeff(d);
    while (!p.is_zero()) {
        const auto& plead = leading_exponent(p);
        ExponentVector g(p.nvars());
        for (std::size_t i = 0; i < p.nvars(); ++i) {
            if (plead[i] < dlead[i]) return std::nullopt;
            g[i] = plead[i] - dlead[i];
        }
        Rational qc = leading_coeff(p) / dc;
        QPoly t(p.nvars());
        t.add_term(g, qc);
        q += t;
        p -= t * d;
    }
    return q;
}

// Element of Q(mu): numerator/denominator pair of polynomials. Kept with the
// denominator content-1 and positive leading coefficient; num/den are reduced
// by exact division when one divides the other, but are not forced coprime
// (equality tests use cross-multiplication, which is decisive regardless).
class RationalFunction {
public:
    RationalFunction() : num_(0), den_(QPoly::constant(0, Rational(1))) {}
    explicit RationalFunction(QPoly num)
        : num_(std::move(num)), den_(QPoly::constant(num_.nvars(), Rational(1))) {}
    RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        normalize();
    }
    static RationalFunction constant(std::size_t nvars, Rational c) {
        return RationalFunction(QPoly::constant(nvars, std::move(c)));
    }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.total_degree() == 0 && den_.total_degree() == 0; }

    RationalFunction& operator+=(const RationalFunction& o) {
        if (den_ == o.den_) {
            num_ += o.num_;
        } else {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ = den_ * o.den_;
        }
        normalize();
        return *this;
    }
    RationalFunction& operator-=(const RationalFunction& o) {
        if (den_ == o.den_) {
            num_ -= o.num_;
        } else {
            num_ = num_ * o.den_ - o.num_ * den_;
            den_ = den_ * o.den_;
        }
        normalize();
        return *this;
    }
    RationalFunction& operator*=(const RationalFunction& o) {
        num_ = num_ * o.num_;
        den_ = den_ * o.den_;
        normalize();
        return *this;
    }
    RationalFunction& operator/=(const RationalFunction& o) {
        if (o.is_zero()) throw std::domain_error("rational function division by zero");
        num_ = num_ * o.den_;
        den_ = den_ * o.num_;
        normalize();
        return *this;
    }
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { a += b; return a; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { a -= b; return a; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { a *= b; return a; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { a /= b; return a; }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }

    // decidable via cross-multiplication
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    // Exact evaluation at a rational point.
    Rational eval(const std::vector<Rational>& point) const {
        Rational d = den_.eval(point);
        if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole");
        return num_.eval(point) / d;
    }

    Complex eval_complex(const std::vector<Complex>& point) const {
        Complex d = to_complex_poly(den_).eval(point);
        if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole");
        return to_complex_poly(num_).eval(point) / d;
    }

    std::string str(std::span<const std::string> varnames) const {
        bool unit_den = den_.total_degree() == 0 && leading_coeff(den_) == 1;
        if (unit_den) return num_.str(varnames);
        return "(" + num_.str(varnames) + ")/(" + den_.str(varnames) + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = QPoly::constant(num_.nvars(), Rational(1));
            return;
        }
        if (auto q = divide_exact(num_, den_)) {
            num_ = std::move(*q);
            den_ = QPoly::constant(num_.nvars(), Rational(1));
            return;
        }
        Rational c = content(den_);
        if (leading_coeff(den_) < 0) c = -c;
        if (c != 1) {
            Rational inv = Rational(1) / c;
            den_ *= inv;
            num_ *= inv;
        }
    }

    QPoly num_, den_;
};

template <>
struct ring_traits<RationalFunction> {
    static bool is_zero(const RationalFunction& r) { return r.is_zero(); }
};

} // namespace sincert

#endif
