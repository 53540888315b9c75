#include "sincert/system_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace sincert {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t line;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return eof() ? '\0' : s[pos]; }
    void skip_ws() {
        while (!eof() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, pos + 1, msg); }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_ident(Cursor& c) {
    std::size_t start = c.pos;
    if (!ident_start(c.peek())) c.fail("expected an identifier");
    while (!c.eof() && ident_char(c.peek())) ++c.pos;
    return c.s.substr(start, c.pos - start);
}

// Decimal or rational literal, exactly: "3", "0.125", "1.2e-3", "3/4".
Rational read_number(Cursor& c) {
    std::size_t start = c.pos;
    if (c.peek() == '+' || c.peek() == '-') ++c.pos;
    bool digits = false;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) { ++c.pos; digits = true; }
    Integer int_part = 0, frac_part = 0;
    std::size_t frac_len = 0;
    std::string ipart = c.s.substr(start, c.pos - start);
    if (c.peek() == '.') {
        ++c.pos;
        std::size_t fs = c.pos;
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) { ++c.pos; digits = true; }
        frac_len = c.pos - fs;
        if (frac_len) frac_part = Integer(c.s.substr(fs, frac_len));
    }
    if (!digits) c.fail("expected a number");
    bool neg = !ipart.empty() && ipart[0] == '-';
    std::string digits_only = ipart;
    if (!digits_only.empty() && (digits_only[0] == '+' || digits_only[0] == '-'))
        digits_only = digits_only.substr(1);
    int_part = digits_only.empty() ? Integer(0) : Integer(digits_only);

    Integer den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational value = Rational(int_part) + Rational(frac_part, den);
    if (neg) value = -value;

    if (c.peek() == 'e' || c.peek() == 'E') {
        ++c.pos;
        std::size_t es = c.pos;
        if (c.peek() == '+' || c.peek() == '-') ++c.pos;
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
        if (c.pos == es || (c.pos == es + 1 && !std::isdigit(static_cast<unsigned char>(c.s[es + 0]))))
            c.fail("malformed exponent");
        long ex = std::stol(c.s.substr(es, c.pos - es));
        Integer p = 1;
        for (long i = 0; i < std::abs(ex); ++i) p *= 10;
        value *= ex >= 0 ? Rational(p) : Rational(1, p);
    }
    if (c.peek() == '/') {
        ++c.pos;
        std::size_t ds = c.pos;
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
        if (c.pos == ds) c.fail("expected a denominator");
        Integer d(c.s.substr(ds, c.pos - ds));
        if (d == 0) c.fail("zero denominator");
        value /= Rational(d);
    }
    return value;
}

// complex literal: a, bi, a+bi, a-bi (with i optionally standalone)
std::pair<Rational, Rational> read_complex(Cursor& c) {
    auto read_part = [&](bool& is_imag) {
        c.skip_ws();
        std::size_t save = c.pos;
        Rational v;
        if (c.peek() == 'i') { v = 1; ++c.pos; is_imag = true; return v; }
        if ((c.peek() == '+' || c.peek() == '-') && c.pos + 1 < c.s.size() && c.s[c.pos + 1] == 'i') {
            v = c.peek() == '-' ? -1 : 1;
            c.pos += 2;
            is_imag = true;
            return v;
        }
        v = read_number(c);
        if (c.peek() == 'i') { ++c.pos; is_imag = true; } else { is_imag = false; }
        (void)save;
        return v;
    };
    bool imag1 = false;
    Rational first = read_part(imag1);
    Rational re = 0, im = 0;
    (imag1 ? im : re) = first;
    if (!imag1 && (c.peek() == '+' || c.peek() == '-')) {
        bool imag2 = false;
        Rational second = read_part(imag2);
        if (!imag2) c.fail("expected an imaginary part");
        im = second;
    }
    return {re, im};
}

struct PolyBuilder {
    std::vector<std::string>* declared; // may grow when variables are implicit x<k>
    bool implicit;                      // x1..xn naming
    std::map<std::string, std::size_t> index;

    std::size_t var_index(Cursor& c, const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        if (!implicit) c.fail("unknown variable '" + name + "'");
        // accept x<k> only
        if (name.size() < 2 || name[0] != 'x') c.fail("unknown variable '" + name + "' (declare with vars:)");
        for (std::size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
                c.fail("unknown variable '" + name + "' (declare with vars:)");
        std::size_t k = std::stoul(name.substr(1));
        if (k == 0) c.fail("variable indices start at 1");
        while (declared->size() < k) {
            std::string nm = "x" + std::to_string(declared->size() + 1);
            index[nm] = declared->size();
            declared->push_back(nm);
        }
        return k - 1;
    }
};

// term map in a growable variable space; exponents are padded at the end
using RawTerms = std::vector<std::pair<std::vector<std::uint32_t>, Rational>>;

RawTerms parse_poly_line(Cursor& c, PolyBuilder& vars) {
    RawTerms terms;
    c.skip_ws();
    bool first = true;
    while (true) {
        c.skip_ws();
        if (c.eof()) break;
        Rational sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.peek() == '-' ? -1 : 1;
            ++c.pos;
            c.skip_ws();
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        first = false;

        Rational coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '.') {
            coeff = read_number(c);
            have_coeff = true;
            c.skip_ws();
            if (c.peek() == '*') { ++c.pos; c.skip_ws(); }
        }
        std::vector<std::uint32_t> expo;
        bool have_mono = false;
        while (ident_start(c.peek())) {
            std::string name = read_ident(c);
            std::size_t vi = vars.var_index(c, name);
            std::uint32_t p = 1;
            if (c.peek() == '^') {
                ++c.pos;
                std::size_t ds = c.pos;
                while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
                if (c.pos == ds) c.fail("expected an exponent");
                p = static_cast<std::uint32_t>(std::stoul(c.s.substr(ds, c.pos - ds)));
            }
            if (expo.size() <= vi) expo.resize(vi + 1, 0);
            expo[vi] += p;
            have_mono = true;
            c.skip_ws();
            if (c.peek() == '*') { ++c.pos; c.skip_ws(); }
        }
        if (!have_coeff && !have_mono) c.fail("expected a term");
        terms.emplace_back(std::move(expo), sign * coeff);
        c.skip_ws();
        if (c.eof()) break;
        if (c.peek() != '+' && c.peek() != '-') c.fail("unexpected character in polynomial");
    }
    return terms;
}

} // namespace

SystemFile parse_system(const std::string& text) {
    SystemFile sf;
    std::vector<std::string> varnames;
    bool declared = false;
    PolyBuilder vars{&varnames, true, {}};
    std::vector<RawTerms> raw;
    std::vector<std::string> poly_names;
    std::optional<std::vector<std::pair<Rational, Rational>>> point;
    std::optional<Rational> tol;

    std::istringstream in(text);
    std::string lbuf;
    std::size_t lineno = 0;
    while (std::getline(in, lbuf)) {
        ++lineno;
        // strip comments
        auto hash = lbuf.find('#');
        if (hash != std::string::npos) lbuf = lbuf.substr(0, hash);
        Cursor c{lbuf, 0, lineno};
        c.skip_ws();
        if (c.eof()) continue;

        // directive lines
        std::size_t save = c.pos;
        if (ident_start(c.peek())) {
            std::string word = read_ident(c);
            if (c.peek() == ':') {
                ++c.pos;
                if (word == "vars") {
                    if (declared) c.fail("duplicate vars declaration");
                    if (!raw.empty()) c.fail("vars must be declared before polynomials");
                    declared = true;
                    vars.implicit = false;
                    varnames.clear();
                    vars.index.clear();
                    while (true) {
                        c.skip_ws();
                        if (c.eof()) break;
                        if (c.peek() == ',') { ++c.pos; continue; }
                        std::string nm = read_ident(c);
                        if (vars.index.count(nm)) c.fail("duplicate variable '" + nm + "'");
                        vars.index[nm] = varnames.size();
                        varnames.push_back(nm);
                    }
                    if (varnames.empty()) c.fail("vars: needs at least one name");
                    continue;
                }
                if (word == "point") {
                    std::vector<std::pair<Rational, Rational>> pt;
                    while (true) {
                        c.skip_ws();
                        if (c.eof()) break;
                        if (c.peek() == ',') { ++c.pos; continue; }
                        pt.push_back(read_complex(c));
                    }
                    if (pt.empty()) c.fail("point: needs coordinates");
                    point = std::move(pt);
                    continue;
                }
                if (word == "tol") {
                    c.skip_ws();
                    tol = read_number(c);
                    if (!(*tol > 0)) c.fail("tolerance must be positive");
                    continue;
                }
                c.fail("unknown directive '" + word + ":'");
            }
            // maybe "name = poly"
            c.skip_ws();
            if (c.peek() == '=') {
                ++c.pos;
                poly_names.push_back(word);
                raw.push_back(parse_poly_line(c, vars));
                continue;
            }
            c.pos = save;
        }
        poly_names.push_back("f" + std::to_string(raw.size() + 1));
        raw.push_back(parse_poly_line(c, vars));
    }

    if (raw.empty()) throw ParseError(lineno ? lineno : 1, 1, "no polynomials in input");
    sf.nvars = varnames.size();
    if (sf.nvars == 0) throw ParseError(1, 1, "no variables found");
    sf.varnames = varnames;
    sf.names = poly_names;
    for (const auto& terms : raw) {
        Polynomial<Rational> p(sf.nvars);
        for (const auto& [e, cval] : terms) {
            ExponentVector ev(sf.nvars, 0);
            for (std::size_t i = 0; i < e.size(); ++i) ev[i] = e[i];
            p.add_term(ev, cval);
        }
        sf.polynomials.push_back(std::move(p));
    }
    if (point) {
        if (point->size() != sf.nvars)
            throw ParseError(1, 1, "point dimension does not match the variable count");
        sf.point = std::move(point);
    }
    sf.tolerance = tol;
    return sf;
}

namespace {
std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}
} // namespace

std::string print_system(const SystemFile& sf) {
    std::ostringstream os;
    os << "vars:";
    for (const auto& v : sf.varnames) os << " " << v;
    os << "\n";
    for (std::size_t i = 0; i < sf.polynomials.size(); ++i) {
        os << sf.names[i] << " = " << sf.polynomials[i].str(sf.varnames) << "\n";
    }
    if (sf.point) {
        os << "point:";
        for (const auto& [re, im] : *sf.point) {
            os << " " << rational_str(re);
            if (!im.is_zero()) {
                if (im > 0) os << "+";
                os << rational_str(im) << "i";
            }
        }
        os << "\n";
    }
    if (sf.tolerance) os << "tol: " << rational_str(*sf.tolerance) << "\n";
    return os.str();
}

} // namespace sincert
