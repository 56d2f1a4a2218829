#pragma once

// Closed-form coefficients of holomorphic projections of products of the
// Hurwitz generating series with theta series, and the auxiliary progression
// construction used with them.
//
// Notation follows the role of each quantity rather than its symbol:
//   a, b, beta   progression aZ + b with beta^2 = -b (mod a)
//   beta_tilde   any square root of -b modulo a
//   a_q          q-part of a for a prime q | a

#include "hcl/arith.hpp"
#include "hcl/hurwitz.hpp"
#include "hcl/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hcl {

// Coefficient of e(n tau) in (sqrt(a)/pi) * pi_hol(theta*_{a,beta_tilde} * theta_{a,beta}):
//   -4 ( [beta_tilde = 0 (mod a)] sum_{m = beta, m != 0, m^2 = a n} |m|
//        + sum_{m = beta, m~ = beta_tilde, m~ != 0, m^2 - m~^2 = a n} (m^2 - m~^2)/(|m| + |m~|) )
Rational proj_theta_product(i64 a, i64 beta_tilde, i64 beta, i64 n);

// -1/2 sum_{beta_tilde^2 = -b} sum_{a n = d1 d2, d1 = beta + beta_tilde, d2 = beta - beta_tilde (mod a)}
//   min(d1, d2), over positive d1 != d2.
// Requires beta^2 = -b (mod a), n >= 1 and a n not a perfect square.
Rational nonhol_coefficient(i64 a, i64 b, i64 beta, i64 n);

struct QSubsetTerm {
  std::vector<i64> subset;  // primes q with beta_tilde = beta (mod a_q)
  i64 beta_tilde;           // CRT residue attached to the subset
  i64 a_part;               // a_Q
  i64 a_complement;         // a / a_Q
  i64 gcd_part;             // a'_Q with a' = gcd(a, 2 beta)
  i64 gcd_complement;       // a' / a'_Q
  i64 inner_sum;            // sum of min(d1, d2) over admissible factorizations
  std::vector<std::pair<i64, i64>> factorizations;  // admissible (d1, d2)
};

struct QSubsetDecomposition {
  i64 a, b, beta, n;
  std::vector<i64> primes;  // all prime divisors of a
  i64 gcd_a_2beta;
  std::vector<QSubsetTerm> terms;  // one per subset, ordered by bitmask

  // -1/2 * sum of inner sums; equals nonhol_coefficient(a, b, beta, n).
  Rational total() const;
  // Subsets with a nonzero inner sum.
  std::vector<const QSubsetTerm*> contributing() const;
};

// Requires, besides the nonhol_coefficient preconditions, that -b has exactly
// the two square roots +-beta modulo every a_q.
QSubsetDecomposition q_subset_decomposition(i64 a, i64 b, i64 beta, i64 n);

struct SubprogressionWitness {
  i64 a_tilde;
  i64 b_tilde;
  i64 a;
  i64 b;
  i64 beta;
  i64 p_big;
  i64 base_modulus;  // prod_{q | a_tilde} q^max(ord_q a_tilde, ord_q(2 beta) + 1)

  i64 squarefree_kernel() const;
};

// Empty when the witness satisfies all four conditions: a_tilde | a and
// b = b_tilde (mod a_tilde); -b = beta^2 (mod a); gcd(a_q, 2 beta) is a proper
// divisor of a_q for every prime q | a; p_big | a with a < p_big^2 and
// 0 <= 2 beta < p_big.
std::vector<std::string> witness_violations(const SubprogressionWitness& w);

// Refines a_tilde Z + b_tilde to a progression satisfying the four conditions.
// beta is reduced modulo a_tilde first; a zero residue is rejected.
SubprogressionWitness subprogression_construct(i64 a_tilde, i64 b_tilde, i64 beta);

inline constexpr i64 kPrimeSearchCap = 10'000'000;

struct PropositionPrimes {
  i64 gcd_a_2beta;        // a' = gcd(a, 2 beta)
  bool two_beta_is_gcd;   // 2 beta = a' (mod a)
  std::optional<i64> p;   // a' p = 2 beta (mod a), p > a/a'; absent when two_beta_is_gcd
  i64 p_prime;            // p' = 1 (mod a), p' > p a/a' (or > a/a')

  // a' p, or a' when two_beta_is_gcd.
  i64 first_index() const;
  // a' p p', or a' p' when two_beta_is_gcd.
  i64 second_index() const;
};

// Smallest qualifying primes; throws std::runtime_error past kPrimeSearchCap.
PropositionPrimes find_proposition_primes(const SubprogressionWitness& w);

// Coefficient of e(n tau) in U_{a,b} E^hol * (theta_{a,beta} + theta_{a,-beta}).
Rational hol_product_coefficient(i64 a, i64 b, i64 beta, i64 n, const HurwitzTable& table);

// hol_product_coefficient + 1/16 sum_{beta_tilde^2 = -b}
//   [proj_theta_product(a, beta_tilde, beta, n) + proj_theta_product(a, beta_tilde, -beta, n)].
Rational exact_projection_coefficient(i64 a, i64 b, i64 beta, i64 n, const HurwitzTable& table);

}  // namespace hcl
