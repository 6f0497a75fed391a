#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace abc {

// All scoring and comparison arithmetic is exact. Doubles appear only in
// display helpers and never decide an outcome.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Renders r in lowest terms as "p/q"; the denominator is always printed so
// machine-readable output stays uniform ("3/1", "-7/2", "0/1").
std::string fraction_string(const Rational& r);

// Accepts "p/q" or a bare integer "p". Returns nullopt on malformed input or
// a zero denominator.
std::optional<Rational> parse_fraction(const std::string& text);

double approx(const Rational& r);

}  // namespace abc
