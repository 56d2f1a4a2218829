#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace hcl {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Always "num/den", with the denominator positive and "/1" kept.
std::string to_fraction_string(const Rational& q);
// Accepts "num/den" or a bare integer.
Rational parse_fraction(std::string_view text);

// Least nonnegative residue of q modulo ell; throws when ell divides the
// reduced denominator.
std::int64_t residue_mod(const Rational& q, std::int64_t ell);

}  // namespace hcl
