#pragma once

// Case analysis for a congruence H(a n + b) = 0 (mod ell): either the class
// numbers h(-D) of the fundamental discriminants involved are divisible by
// ell, or a single prime p | a carries the local factor
// sigma1(f_p) - (-D/p) sigma1(f_p/p) = 0 (mod ell) on every D f^2 in a Z + b.

#include "hcl/arith.hpp"
#include "hcl/congruence.hpp"
#include "hcl/hurwitz.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcl {

struct AssumptionEntry {
  i64 prime;
  int ord;       // ord_p(a / gcd(a, b))
  int required;  // 2 for p = 2, else 1
  bool pass() const { return ord >= required; }
};

struct AssumptionReport {
  std::vector<AssumptionEntry> primes;  // every prime dividing a
  bool pass() const;
};

AssumptionReport check_assumptions(i64 a, i64 b);

struct PrimeData {
  i64 prime;
  i64 f_p;
  int kronecker;  // (-D/p)
  i64 hecke;      // sigma1(f_p) - (-D/p) sigma1(f_p/p), or 1 when p does not divide f
};

struct RepresentationRow {
  i64 n;
  i64 D;
  i64 f;
  std::vector<PrimeData> primes;  // one per prime dividing a, ascending
};

// n <= N, n = b (mod a), n > 0 a discriminant magnitude, written n = D f^2.
std::vector<RepresentationRow> enumerate_representations(i64 a, i64 b, i64 N, unsigned jobs = 1);

// Exact local factor at p; 1 when p does not divide f.
i64 hecke_value(i64 D, i64 f, i64 p);
// hecke_value reduced to [0, ell).
i64 hecke_condition(i64 D, i64 f, i64 p, i64 ell);

enum class DichotomyCase { FundamentalDivisibility, HeckeCondition, Inconclusive };

std::string to_string(DichotomyCase c);

struct HeckeWitness {
  i64 prime;
  int kronecker;  // first row's value
  i64 f_p;        // first row's value
  bool unique;    // kronecker and f_p constant over all rows
  ArithmeticProgression prime_power;  // a_p Z + (b mod a_p)
  VerifyResult prime_power_check;
};

struct ClassNumberResidue {
  i64 D;
  i64 h;           // h(-D)
  i64 h_mod_ell;
};

struct DichotomyReport {
  i64 ell, a, b, n_max;
  DichotomyCase verdict;
  std::optional<HeckeWitness> witness;
  AssumptionReport assumptions;
  std::vector<RepresentationRow> evidence;
  std::vector<ClassNumberResidue> h_values;  // distinct D > 4 among the rows, ascending
};

class DichotomyPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws DichotomyPrecondition when the congruence fails to N or the
// assumptions on a / gcd(a, b) do not hold.
DichotomyReport classify(i64 ell, i64 a, i64 b, i64 N, const HurwitzTable& table,
                         unsigned jobs = 1);

// max_rows < 0 keeps every evidence row.
nlohmann::ordered_json to_json(const DichotomyReport& report, long max_rows = -1);

}  // namespace hcl
