#include "parataur/rational.hpp"

#include "parataur/error.hpp"

#include <cctype>
#include <limits>

namespace parataur {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::MalformedBounds: return "MalformedBounds";
        case ErrorKind::MalformedModel: return "MalformedModel";
        case ErrorKind::NotLU: return "NotLU";
        case ErrorKind::OpenBounds: return "OpenBounds";
        case ErrorKind::UnboundedUniversality: return "UnboundedUniversality";
        case ErrorKind::Unbounded: return "Unbounded";
        case ErrorKind::NotAZone: return "NotAZone";
        case ErrorKind::EmptyInitial: return "EmptyInitial";
        case ErrorKind::EnumerationCap: return "EnumerationCap";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') {
        throw Error(ErrorKind::Syntax, "malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(strip_plus(num), 10);
    mpz_class d(strip_plus(den), 10);
    if (d == 0) throw Error(ErrorKind::Syntax, "zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_fraction(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational floor(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

Rational ceil(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

std::int64_t to_int64(const Rational& q) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
        throw Error(ErrorKind::InvalidArgument, "value " + to_string(q) + " is not a machine integer");
    }
    return q.get_num().get_si();
}

}  // namespace parataur
