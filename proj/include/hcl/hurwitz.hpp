#pragma once

// Hurwitz class numbers H(D).
//
// H(D) counts SL2(Z)-classes of positive definite binary quadratic forms of
// discriminant -D, with forms equivalent to a multiple of x^2 + y^2 weighted
// 1/2 and multiples of x^2 + xy + y^2 weighted 1/3. H(0) = -1/12 and
// H(D) = 0 when -D is not a discriminant. All values are carried as the
// integer 12 H(D).

#include "hcl/arith.hpp"
#include "hcl/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcl {

struct HurwitzValue {
  i64 twelve_h = 0;

  Rational value() const { return Rational(twelve_h, 12); }

  friend bool operator==(const HurwitzValue&, const HurwitzValue&) = default;
};

class InsufficientTable : public std::out_of_range {
 public:
  InsufficientTable(i64 needed, i64 available);
};

HurwitzValue hurwitz(i64 D);

// h(-D) for a fundamental discriminant -D, by counting primitive reduced forms.
i64 class_number(i64 D);

// H(D f^2) from H(D) and the local factors sigma1(f_p) - (-D/p) sigma1(f_p/p).
HurwitzValue hurwitz_via_formula(i64 D, i64 f);

class HurwitzTable {
 public:
  HurwitzTable() = default;
  explicit HurwitzTable(std::vector<std::int32_t> twelve_h);

  i64 n_max() const { return static_cast<i64>(values_.size()) - 1; }
  bool covers(i64 N) const { return N <= n_max(); }

  // Throws InsufficientTable when D > n_max().
  HurwitzValue at(i64 D) const;
  HurwitzValue operator[](i64 D) const { return {values_[static_cast<std::size_t>(D)]}; }

  std::span<const std::int32_t> twelve_h() const { return values_; }

  friend bool operator==(const HurwitzTable&, const HurwitzTable&) = default;

 private:
  std::vector<std::int32_t> values_;
};

inline constexpr i64 kMaxTableSize = 100'000'000;

// One sweep over reduced triples (a, b, c) with 4ac - b^2 <= n_max.
// jobs = 0 uses every hardware thread.
HurwitzTable build_table(i64 n_max, unsigned jobs = 0);

// CSV cache: header "D,twelveH", then one row per D = 0..n_max.
void write_table_csv(const HurwitzTable& table, std::ostream& out);
HurwitzTable read_table_csv(std::istream& in);

}  // namespace hcl
