#include "sincert/scalar.hpp"

#include <sstream>

namespace sincert {

void set_working_digits(unsigned digits) {
    if (digits < 2) throw std::invalid_argument("working precision must be at least 2 digits");
    Real::default_precision(digits);
}

unsigned working_digits() { return Real::default_precision(); }

Real unit_roundoff() {
    return boost::multiprecision::pow(Real(10), 1 - static_cast<int>(working_digits()));
}

Real abs(const Complex& z) {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    if (z.im.is_zero()) return abs(z.re);
    if (z.re.is_zero()) return abs(z.im);
    // hypot with scaling
    Real a = abs(z.re), b = abs(z.im);
    if (a < b) std::swap(a, b);
    Real t = b / a;
    return a * sqrt(Real(1) + t * t);
}

std::string to_string(const Complex& z, unsigned digits) {
    std::ostringstream os;
    os << z.re.str(digits);
    if (!z.im.is_zero()) {
        std::string im = z.im.str(digits);
        if (!im.empty() && im[0] != '-') os << "+";
        os << im << "i";
    }
    return os.str();
}

} // namespace sincert
