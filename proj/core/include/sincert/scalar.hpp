#ifndef SINCERT_SCALAR_HPP
#define SINCERT_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>
#include <string>

namespace sincert {

// Exact scalars are GMP rationals; floating scalars are MPFR reals with a
// runtime-selected decimal precision (thread-local), wrapped in a small
// complex type. The two kinds never mix implicitly.
using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;
using Real     = boost::multiprecision::mpfr_float;

// Working precision in decimal digits for all subsequently constructed Reals.
void set_working_digits(unsigned digits);
unsigned working_digits();

// Unit roundoff at the current working precision, 10^(1-digits).
Real unit_roundoff();

struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int v) : re(v), im(0) {}
    explicit Complex(const Rational& q) : re(q), im(0) {}
    explicit Complex(const std::string& decimal) : re(decimal), im(0) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { a += b; return a; }
    friend Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
    friend Complex operator*(Complex a, const Complex& b) { a *= b; return a; }
    friend Complex operator/(Complex a, const Complex& b) { a /= b; return a; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real abs2(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z);

inline Complex& Complex::operator/=(const Complex& o) {
    // Smith's scaled division
    if (boost::multiprecision::abs(o.re) >= boost::multiprecision::abs(o.im)) {
        if (o.re.is_zero()) throw std::domain_error("complex division by zero");
        Real t = o.im / o.re;
        Real d = o.re + o.im * t;
        Real r = (re + im * t) / d;
        im = (im - re * t) / d;
        re = std::move(r);
    } else {
        Real t = o.re / o.im;
        Real d = o.re * t + o.im;
        Real r = (re * t + im) / d;
        im = (im * t - re) / d;
        re = std::move(r);
    }
    return *this;
}

std::string to_string(const Complex& z, unsigned digits = 6);

// Traits separating the exact and floating scalar kinds.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    using magnitude_type = Rational;
    static Rational magnitude(const Rational& v) { return boost::multiprecision::abs(v); }
    static Rational conjugate(const Rational& v) { return v; }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool is_exact = false;
    using magnitude_type = Real;
    static Real magnitude(const Complex& v) { return abs(v); }
    static Complex conjugate(const Complex& v) { return conj(v); }
    static bool is_zero(const Complex& v) { return v.is_zero(); }
    static Complex zero() { return Complex(); }
    static Complex one() { return Complex(1); }
    static Complex from_int(long v) { return Complex(Real(v)); }
    static Complex from_rational(const Rational& q) { return Complex(Real(q)); }
};

} // namespace sincert

#endif
