#pragma once

// Elementary exact number theory on 64-bit integers.
//
// Everything here is a pure function of its arguments. The only shared state
// is the prime sieve below kSieveLimit, built on first use and immutable
// afterwards.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hcl {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr i64 kSieveLimit = 1'000'000;

struct PrimePower {
  i64 prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n = prod p^e with primes strictly increasing.
struct Factorization {
  i64 n = 1;
  std::vector<PrimePower> factors;

  int ord(i64 p) const;
  // Largest power of p dividing n.
  i64 part(i64 p) const;
  std::vector<i64> primes() const;
  // All positive divisors in ascending order.
  std::vector<i64> divisors() const;
};

Factorization factorize(i64 n);

// Primes below kSieveLimit, ascending.
std::span<const std::int32_t> small_primes();
bool is_prime(i64 n);
// Smallest prime strictly greater than n.
i64 next_prime(i64 n);

i64 mod(i64 x, i64 m);
i64 mul_mod(i64 x, i64 y, i64 m);
i64 pow_mod(i64 base, i64 exp, i64 m);
std::optional<i64> inverse_mod(i64 x, i64 m);
i64 checked_mul(i64 x, i64 y);
i64 ipow(i64 base, int exp);

// Solution of x = r_i (mod m_i) for pairwise coprime moduli, in [0, prod m_i).
i64 crt(std::span<const i64> residues, std::span<const i64> moduli);

i64 sigma1(i64 n);
i64 p_part(i64 n, i64 p);
// p-adic valuation; n must be nonzero.
int ord_p(i64 n, i64 p);

// Kronecker symbol (numerator / modulus) for modulus >= 1.
int kronecker(i64 numerator, i64 modulus);

// All beta in [0, m) with beta^2 = x (mod m), ascending; empty if none.
std::vector<i64> sqrt_mod(i64 x, i64 m);

bool is_square(i64 n);
bool is_squarefree(i64 n);

// True when -D is a fundamental discriminant (D > 0).
bool is_fundamental(i64 D);

struct FundamentalDecomposition {
  i64 D;
  i64 f;

  friend bool operator==(const FundamentalDecomposition&,
                         const FundamentalDecomposition&) = default;
};

// n = D f^2 with -D fundamental. Requires n > 0 and -n = 0, 1 (mod 4).
FundamentalDecomposition fundamental_decomposition(i64 n);

// Number of units in the imaginary quadratic order of discriminant -n.
int unit_count(i64 discriminant_magnitude);

// -n = 0, 1 (mod 4) and n > 0.
bool is_discriminant_magnitude(i64 n);

}  // namespace hcl
