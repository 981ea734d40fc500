#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace geoclust {

// Exact arbitrary-precision rational. All weights and parameters use it so
// that threshold and margin comparisons never suffer rounding.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q", "p", and decimal literals such as "0.125" or "-3.5".
Rational parse_rational(std::string_view text);

// Canonical reduced form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

// Smallest integer >= value.
BigInt ceil_of(const Rational& value);
// Largest integer <= value.
BigInt floor_of(const Rational& value);

// ceil(value) clamped into uint32; used for hop-count thresholds.
std::uint32_t ceil_to_hops(const Rational& value);

// 2^-j as an exact rational.
Rational inverse_power_of_two(unsigned j);

// Square root of a non-negative rational. Exact when the argument is the
// square of a rational; otherwise rounded up to a multiple of 1/grid.
Rational sqrt_round_up(const Rational& square, std::uint32_t grid = 1024);

double to_double(const Rational& value);

}  // namespace geoclust
