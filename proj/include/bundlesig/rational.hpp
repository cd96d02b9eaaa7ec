#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace bundlesig {

/// Arbitrary precision rational (GMP), always stored reduced with a positive
/// denominator.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw ParseError("zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline BigInt floor_of(const Rational& q) {
    BigInt n = boost::multiprecision::numerator(q);
    const BigInt d = boost::multiprecision::denominator(q);
    BigInt fl = n / d;  // truncates toward zero
    if (n < 0 && fl * d != n) fl -= 1;
    return fl;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

inline bool is_integer(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

/// Nearest-ish double (GMP truncation); only used for numeric caches.
inline double to_double(const Rational& q) { return mpq_get_d(q.backend().data()); }

inline std::int64_t to_int64(const BigInt& n) {
    if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN))
        throw InternalConsistency("integer out of 64-bit range");
    return n.convert_to<std::int64_t>();
}

/// Parses "p/q", "p" or a decimal like "-0.125" (converted exactly).
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto strip = [](std::string& t) {
        while (!t.empty() && (t.front() == ' ')) t.erase(t.begin());
        while (!t.empty() && (t.back() == ' ')) t.pop_back();
    };
    strip(s);
    if (s.empty()) throw ParseError("empty rational");
    auto parse_int = [&](const std::string& t) {
        if (t.empty()) throw ParseError("bad rational '" + s + "'");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw ParseError("bad rational '" + s + "'");
        for (std::size_t k = i; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') throw ParseError("bad rational '" + s + "'");
        return BigInt(t[0] == '+' ? t.substr(1) : t);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt den = parse_int(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rational(parse_int(s.substr(0, slash)), den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string fracpart = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        BigInt w = parse_int(whole);
        BigInt scale = 1;
        for (std::size_t k = 0; k < fracpart.size(); ++k) scale *= 10;
        BigInt f = fracpart.empty() ? BigInt(0) : parse_int(fracpart);
        if (fracpart.size() && (fracpart[0] == '-' || fracpart[0] == '+'))
            throw ParseError("bad rational '" + s + "'");
        Rational r = Rational(w) + Rational(f, scale) * (neg ? -1 : 1);
        return r;
    }
    return Rational(parse_int(s));
}

/// Formats as "p/q", or "p" when integral.
inline std::string format_rational(const Rational& q) {
    const BigInt n = boost::multiprecision::numerator(q);
    const BigInt d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

}  // namespace bundlesig
