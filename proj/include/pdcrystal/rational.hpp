#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pdcrystal/errors.hpp"

namespace pdcrystal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ValuationConfig {
    BigInt p;  // prime used for vp
};

// Sentinel for vp(0) = +infinity.
inline constexpr long long kValInfinity = std::numeric_limits<long long>::max();

// p-adic valuation of a rational, vp(0) = kValInfinity.
long long vp(const Rational& x, const ValuationConfig& cfg);
long long vp_int(const BigInt& n, const BigInt& p);

// Accepts "7", "-3/4", with optional surrounding whitespace. Throws ParseError.
Rational parse_rational(const std::string& s);

// Canonical "num/den" (plain integer when the denominator is 1).
std::string format_rational(const Rational& x);

std::string format_valuation(long long v);

}  // namespace pdcrystal
