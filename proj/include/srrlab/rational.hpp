#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "srrlab/errors.hpp"

namespace srrlab {

// All rates and bounds are exact rationals; no floating point exists anywhere
// in the analysis path. cpp_rational keeps values canonical (reduced,
// positive denominator) by construction.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical serialization: "p/q", or just "p" when q = 1.
inline std::string rational_str(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    std::size_t slash = s.find('/');
    auto parse_int = [&](const std::string& part, bool allow_sign) -> BigInt {
        if (part.empty()) throw ParseError("malformed rational '" + s + "'");
        std::size_t i = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) throw ParseError("malformed rational '" + s + "'");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw ParseError("malformed rational '" + s + "'");
        return BigInt(part);
    };
    if (slash == std::string::npos) return Rational(parse_int(s, true));
    BigInt num = parse_int(s.substr(0, slash), true);
    BigInt den = parse_int(s.substr(slash + 1), false);
    if (den == 0) throw ParseError("zero denominator in rational '" + s + "'");
    return Rational(num, den);
}

} // namespace srrlab
