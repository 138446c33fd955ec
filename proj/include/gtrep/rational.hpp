#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <limits>
#include <string>

#include "gtrep/errors.hpp"

namespace gtrep {

/// Exact scalars. Every number in this library is a rational held in
/// canonical form (lowest terms, positive denominator); there is no
/// floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline bool is_nonneg_integer(const Rat& q) { return q >= 0 && is_integer(q); }

/// Integral rational -> long long. Throws on non-integers and on values
/// outside the long long range (never hit at the scales this library targets).
inline long long to_longlong(const Rat& q) {
    if (!is_integer(q)) throw Error("NotAnInteger", "expected integer, got " + q.str());
    const Int n = numerator(q);
    if (n > (std::numeric_limits<long long>::max)() ||
        n < (std::numeric_limits<long long>::min)()) {
        throw Error("Overflow", "integer out of machine range: " + q.str());
    }
    return n.convert_to<long long>();
}

/// Canonical text form: "num/den", or "num" when the denominator is 1.
inline std::string to_string(const Rat& q) { return q.str(); }

/// Strict parse of the canonical text form. Accepts an optional leading '-',
/// digits, and an optional "/digits" part with a nonzero denominator.
inline Rat rat_from_string(const std::string& s) {
    const auto fail = [&] { throw InvalidInput("not a rational: '" + s + "'"); };
    std::size_t pos = 0;
    const auto digits = [&](std::size_t from) {
        std::size_t p = from;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        return p;
    };
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t num_end = digits(pos);
    if (num_end == pos) fail();
    if (num_end == s.size()) return Rat(Int(s));
    if (s[num_end] != '/') fail();
    std::size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1 || den_end != s.size()) fail();
    Int num(s.substr(0, num_end));
    Int den(s.substr(num_end + 1));
    if (den == 0) fail();
    return Rat(num, den);
}

/// q^e for e >= 0 (empty product convention: q^0 = 1).
inline Rat q_pow(const Rat& base, int e) {
    Rat acc(1);
    for (int t = 0; t < e; ++t) acc *= base;
    return acc;
}

/// Binomial coefficient C(n, k) for n, k >= 0.
inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return Int(0);
    Int acc(1);
    for (int t = 1; t <= k; ++t) {
        acc *= (n - k + t);
        acc /= t;
    }
    return acc;
}

} // namespace gtrep
