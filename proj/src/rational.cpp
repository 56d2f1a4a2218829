#include "hcl/rational.hpp"

#include "hcl/arith.hpp"

#include <stdexcept>

namespace hcl {

std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Rational parse_fraction(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("malformed fraction: '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed fraction: '" + std::string(text) + "'");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("malformed fraction: '" + std::string(text) + "'");
      }
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::int64_t residue_mod(const Rational& q, std::int64_t ell) {
  const BigInt big_ell = ell;
  BigInt num = boost::multiprecision::numerator(q) % big_ell;
  BigInt den = boost::multiprecision::denominator(q) % big_ell;
  if (den == 0) {
    throw std::domain_error("denominator of " + to_fraction_string(q) + " divisible by " +
                            std::to_string(ell));
  }
  const i64 n = mod(num.convert_to<i64>(), ell);
  const auto inv = inverse_mod(mod(den.convert_to<i64>(), ell), ell);
  if (!inv) throw std::domain_error("residue_mod: denominator not invertible");
  return mul_mod(n, *inv, ell);
}

}  // namespace hcl
