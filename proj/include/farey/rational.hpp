#pragma once

/// @file rational.hpp
/// @brief Arbitrary-precision integers and exact rationals used throughout.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace farey {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Renders a rational as "num/den" (always with the slash, e.g. "3/1").
inline std::string rat_str(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "num/den" or a bare integer string into an exact rational.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("parse_rat: zero denominator");
    return Rat(num, den);
}

/// Exact integer square root test: returns true and sets root if n is a
/// perfect square (n >= 0).
inline bool perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = sqrt(n);
    return root * root == n;
}

/// Exact rational square root test.
inline bool rational_square(const Rat& r, Rat& root) {
    Int np, dp;
    if (!perfect_square(numerator(r), np)) return false;
    if (!perfect_square(denominator(r), dp)) return false;
    root = Rat(np, dp);
    return true;
}

}  // namespace farey
