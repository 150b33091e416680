#pragma once

// Exact rational scalars. Everything in this library computes over Q;
// there is no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace oforge {

using Integer = boost::multiprecision::cpp_int;

// Always in lowest terms with positive denominator (the backend canonicalizes
// on construction and after every arithmetic operation).
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long n, long long d = 1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(Integer(n), Integer(d));
}

inline Integer rat_num(const Rational& q) { return numerator(q); }
inline Integer rat_den(const Rational& q) { return denominator(q); }

inline Integer factorial(int n) {
    Integer f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline std::string to_string(const Rational& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

// Parses "n" or "n/d"; throws on malformed input.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer n(s.substr(0, slash));
        Integer d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

}  // namespace oforge
