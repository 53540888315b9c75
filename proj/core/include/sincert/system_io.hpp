#ifndef SINCERT_SYSTEM_IO_HPP
#define SINCERT_SYSTEM_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "sincert/polynomial.hpp"

namespace sincert {

// A parsed input system. Coefficients are read exactly (decimal literals
// become rationals), so the same file drives both the exact and the floating
// pipelines. Point components may be complex, written like 2, -1.5i or 2+3i.
struct SystemFile {
    std::size_t nvars = 0;
    std::vector<std::string> varnames;
    std::vector<Polynomial<Rational>> polynomials;
    std::vector<std::string> names; // per-polynomial display names (f1, f2, ...)
    std::optional<std::vector<std::pair<Rational, Rational>>> point; // (re, im)
    std::optional<Rational> tolerance;

    std::vector<Polynomial<Complex>> complex_system() const { return to_complex_system(polynomials); }
    std::vector<Complex> complex_point() const {
        std::vector<Complex> out;
        if (point)
            for (const auto& [re, im] : *point) out.emplace_back(Real(re), Real(im));
        return out;
    }
};

struct ParseError : std::runtime_error {
    std::size_t line, column;
    ParseError(std::size_t line_, std::size_t col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(col_) +
                             ": " + msg),
          line(line_), column(col_) {}
};

// Grammar, one polynomial per line:
//   file    := (comment | vars | point | tol | poly)*
//   vars    := "vars:" name ((","|" ") name)*
//   point   := "point:" complex+
//   tol     := "tol:" number
//   poly    := [name "="] term (("+"|"-") term)*
//   term    := coeff ["*"]? monomial? | monomial
//   monomial:= var ("^" int)? (["*"] var ("^" int)?)*
// Without a vars declaration the variables must be named x1..xn.
SystemFile parse_system(const std::string& text);

// print(parse(s)) reparses to the same term maps.
std::string print_system(const SystemFile& sf);

} // namespace sincert

#endif
