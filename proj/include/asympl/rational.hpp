#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "asympl/errors.hpp"

namespace asympl {

/// Exact rational scalar used throughout; arbitrary precision, always normalized.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline int sign_of(const Rational& q) { return q.sign(); }

inline Rational rational_pow(const Rational& q, int e) {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? q : Rational(1) / q;
    int n = e > 0 ? e : -e;
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

/// Parses "123", "-4/7", "3/4". Whole string must be consumed.
inline Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw parse_error("expected rational number", i);
    Integer num(text.substr(start, i - start));
    Integer den(1);
    skip_ws();
    if (i < text.size() && text[i] == '/') {
        ++i;
        skip_ws();
        start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw parse_error("expected denominator", i);
        den = Integer(text.substr(start, i - start));
        if (den == 0) throw parse_error("zero denominator in rational literal", start);
    }
    skip_ws();
    if (i != text.size()) throw parse_error("trailing characters after rational", i);
    Rational q(num, den);
    return neg ? -q : q;
}

inline std::string rational_str(const Rational& q) { return q.str(); }

} // namespace asympl
