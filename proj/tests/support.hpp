#pragma once

// Test-only helpers: a tiny linear-constraint reader so golden tests can be
// written as text, plus brute-force oracles.

#include "parataur/poly.hpp"

#include <cctype>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

namespace testing_support {

using parataur::Polyhedron;
using parataur::Rational;
using parataur::SpacePtr;

// "2x - y + 3" -> coefficient vector and constant.
inline void read_side(std::string_view s, const parataur::Space& space, std::vector<Rational>& coeffs,
                      Rational& constant, int sign) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    int term_sign = 1;
    while (true) {
        skip();
        if (i >= s.size()) break;
        if (s[i] == '+' || s[i] == '-') {
            term_sign = s[i] == '-' ? -term_sign : term_sign;
            ++i;
            continue;
        }
        std::string num;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) num += s[i++];
        skip();
        if (i < s.size() && s[i] == '*') {
            ++i;
            skip();
        }
        std::string name;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) name += s[i++];
        const Rational k = num.empty() ? Rational(1) : parataur::parse_rational(num);
        if (name.empty()) {
            constant += sign * term_sign * k;
        } else {
            std::size_t v = 0;
            while (v < space.size() && space.names[v] != name) ++v;
            if (v == space.size()) throw std::runtime_error("unknown variable " + name);
            coeffs[v] += sign * term_sign * k;
        }
        term_sign = 1;
    }
}

// Adds "lhs op rhs" (op in <, <=, =, >=, >) to p.
inline void add_text(Polyhedron& p, std::string_view text) {
    static constexpr std::string_view ops[] = {"<=", ">=", "<", ">", "="};
    for (auto op : ops) {
        const auto pos = text.find(op);
        if (pos == std::string_view::npos) continue;
        std::vector<Rational> c(p.dim());
        Rational k = 0;
        read_side(text.substr(0, pos), p.space(), c, k, 1);
        read_side(text.substr(pos + op.size()), p.space(), c, k, -1);
        // c·v + k (op) 0
        auto negate = [&] {
            for (auto& a : c) a = -a;
            k = -k;
        };
        if (op == "<=") p.add(c, k, false);
        else if (op == "<") p.add(c, k, true);
        else if (op == ">=") { negate(); p.add(c, k, false); }
        else if (op == ">") { negate(); p.add(c, k, true); }
        else {
            p.add(c, k, false);
            negate();
            p.add(c, k, false);
        }
        return;
    }
    throw std::runtime_error("no relation in " + std::string(text));
}

inline Polyhedron poly(const SpacePtr& space, std::initializer_list<std::string_view> rows) {
    Polyhedron p(space);
    for (auto r : rows) add_text(p, r);
    return p;
}

// mpq_class(n, d) is not canonicalized on construction.
inline Rational q(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::vector<Rational> point(std::initializer_list<Rational> xs) { return std::vector<Rational>(xs); }

}  // namespace testing_support

#include "parataur/model.hpp"

#include <fstream>
#include <sstream>

namespace testing_support {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string fixture_path(const std::string& name) { return std::string(PARATAUR_FIXTURE_DIR) + "/" + name; }

inline parataur::Pta fixture(const std::string& name) { return parataur::parse_model(read_file(fixture_path(name))); }

// Builds a model from a compact JSON literal.
inline parataur::Pta model(const std::string& json) { return parataur::parse_model(json); }

}  // namespace testing_support
