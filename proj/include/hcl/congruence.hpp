#pragma once

// Ramanujan-type congruences H(a n + b) = 0 (mod ell), checked numerically
// against a Hurwitz table. Every check is bounded by an explicit N; nothing
// here proves a congruence.

#include "hcl/arith.hpp"
#include "hcl/hurwitz.hpp"

#include "json.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hcl {

struct ArithmeticProgression {
  i64 a = 1;
  i64 b = 0;  // 0 <= b < a

  // Reduces b modulo a; a must be positive.
  static ArithmeticProgression make(i64 a, i64 b);

  friend auto operator<=>(const ArithmeticProgression&, const ArithmeticProgression&) = default;
};

enum class HolomorphicClass { Holomorphic, NonHolomorphic };

// "holomorphic" / "nonholomorphic"
std::string to_string(HolomorphicClass c);

// NonHolomorphic iff -b is a square modulo a.
HolomorphicClass classify_progression(i64 a, i64 b);

struct VerifyResult {
  bool ok = false;
  std::optional<i64> first_counterexample;  // least a n + b <= N with 12 H != 0 (mod ell)
  i64 values_checked = 0;
};

// 12 H(a n + b) = 0 (mod ell) for all n >= 0 with a n + b <= N, on the
// canonical residue of b. Throws InsufficientTable when the table is short.
VerifyResult verify_congruence(i64 ell, i64 a, i64 b, i64 N, const HurwitzTable& table);

// Every member of a Z + b is 1 or 2 mod 4, so H vanishes identically there.
bool trivially_vanishing(i64 a, i64 b);

struct CongruenceCertificate {
  i64 ell;
  ArithmeticProgression progression;
  i64 n_max_checked;
  HolomorphicClass holomorphic_class;
  bool maximal_up_to_check;
};

// No (a/q) Z + (b mod a/q), q | a prime, passes verify_congruence to N.
bool maximal_up_to(i64 ell, i64 a, i64 b, i64 N, const HurwitzTable& table);

// All progressions a <= a_max, 0 <= b < a passing verify_congruence to N,
// minus trivially vanishing ones, kept only when maximal. Sorted by (a, b).
// Requires N >= 100 a_max.
std::vector<CongruenceCertificate> search(i64 ell, i64 a_max, i64 N, const HurwitzTable& table,
                                          unsigned jobs = 0);

struct SquareClassResult {
  bool ok = true;
  std::vector<i64> units_checked;                  // u <= u_max with gcd(u, a) = 1
  std::vector<std::pair<i64, i64>> failures;       // (u, first counterexample)
};

// verify_congruence on a Z + b u^2 for every u <= u_max coprime to a.
SquareClassResult square_class_check(const CongruenceCertificate& cert, i64 u_max, i64 N,
                                     const HurwitzTable& table);

// Smallest positive u, gcd(u, a) = 1, u = 1 modulo the prime-to-p part of a,
// with m = b u^2 (mod a). Requires p odd, r = ord_p(a / gcd(a, b)) >= 2 and
// m = b (mod a/p). Throws std::invalid_argument otherwise.
i64 square_class_witness(i64 m, i64 a, i64 b, i64 p);

struct OrdBound {
  i64 prime;
  int ord;    // ord_p(a / gcd(a, b))
  int bound;  // 3 for p = 2, else 1
  bool within() const { return ord <= bound; }
};

// One entry per prime dividing a / gcd(a, b), ascending.
std::vector<OrdBound> ord_bound_report(i64 a, i64 b);

nlohmann::ordered_json to_json(const CongruenceCertificate& cert);

}  // namespace hcl
