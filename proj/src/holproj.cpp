#include "hcl/holproj.hpp"

#include "hcl/qseries.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hcl {

namespace {

void require_root(i64 a, i64 b, i64 beta, const char* who) {
  if (a <= 0) throw std::invalid_argument(std::string(who) + ": a must be positive");
  if (mod(mul_mod(mod(beta, a), mod(beta, a), a) + mod(b, a), a) != 0) {
    throw std::invalid_argument(std::string(who) + ": beta^2 != -b (mod a)");
  }
}

// Positive factor pairs (d1, d2) of a n with the residue conditions for one beta_tilde.
template <typename Visit>
void admissible_pairs(i64 a, i64 beta, i64 beta_tilde, const std::vector<i64>& divisors, i64 an,
                      Visit&& visit) {
  const i64 r1 = mod(beta + beta_tilde, a);
  const i64 r2 = mod(beta - beta_tilde, a);
  for (i64 d1 : divisors) {
    const i64 d2 = an / d1;
    if (d1 == d2) continue;
    if (mod(d1, a) == r1 && mod(d2, a) == r2) visit(d1, d2);
  }
}

i64 first_prime_in_class(i64 residue, i64 modulus, i64 lower) {
  // smallest prime p > lower with p = residue (mod modulus)
  i64 p = lower + 1;
  p += mod(residue - p, modulus);
  for (; p <= kPrimeSearchCap; p += modulus) {
    if (is_prime(p)) return p;
  }
  throw std::runtime_error("no prime = " + std::to_string(residue) + " (mod " +
                           std::to_string(modulus) + ") above " + std::to_string(lower) +
                           " below the search cap");
}

}  // namespace

Rational proj_theta_product(i64 a, i64 beta_tilde, i64 beta, i64 n) {
  if (a <= 0) throw std::invalid_argument("proj_theta_product: a must be positive");
  if (n < 0) throw std::invalid_argument("proj_theta_product: n must be nonnegative");
  if (n == 0) return Rational(0);
  const i64 an = checked_mul(a, n);
  i64 sum = 0;

  if (mod(beta_tilde, a) == 0 && is_square(an)) {
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(an)));
    while (r * r > an) --r;
    while ((r + 1) * (r + 1) <= an) ++r;
    for (i64 m : {r, -r}) {
      if (mod(m - beta, a) == 0) sum += r;
    }
  }

  // m^2 - m~^2 = e f with e = |m| - |m~|, f = |m| + |m~|, m~ != 0 so e < f.
  for (i64 e : factorize(an).divisors()) {
    const i64 f = an / e;
    if (e >= f) break;
    if ((e + f) % 2 != 0) continue;
    const i64 big = (e + f) / 2, small = (f - e) / 2;
    for (i64 m : {big, -big}) {
      if (mod(m - beta, a) != 0) continue;
      for (i64 mt : {small, -small}) {
        if (mod(mt - beta_tilde, a) == 0) sum += e;
      }
    }
  }
  return Rational(-4 * sum);
}

Rational nonhol_coefficient(i64 a, i64 b, i64 beta, i64 n) {
  require_root(a, b, beta, "nonhol_coefficient");
  if (n <= 0) throw std::invalid_argument("nonhol_coefficient: n must be positive");
  const i64 an = checked_mul(a, n);
  if (is_square(an)) throw std::invalid_argument("nonhol_coefficient: a n is a perfect square");
  const auto divisors = factorize(an).divisors();
  i64 sum = 0;
  for (i64 bt : sqrt_mod(-b, a)) {
    admissible_pairs(a, beta, bt, divisors, an, [&](i64 d1, i64 d2) { sum += std::min(d1, d2); });
  }
  return Rational(-sum, 2);
}

Rational QSubsetDecomposition::total() const {
  i64 sum = 0;
  for (const auto& t : terms) sum += t.inner_sum;
  return Rational(-sum, 2);
}

std::vector<const QSubsetTerm*> QSubsetDecomposition::contributing() const {
  std::vector<const QSubsetTerm*> out;
  for (const auto& t : terms) {
    if (t.inner_sum != 0) out.push_back(&t);
  }
  return out;
}

QSubsetDecomposition q_subset_decomposition(i64 a, i64 b, i64 beta, i64 n) {
  require_root(a, b, beta, "q_subset_decomposition");
  if (n <= 0) throw std::invalid_argument("q_subset_decomposition: n must be positive");
  const i64 an = checked_mul(a, n);
  if (is_square(an)) throw std::invalid_argument("q_subset_decomposition: a n is a perfect square");

  const Factorization fa = factorize(a);
  QSubsetDecomposition out{a, b, beta, n, fa.primes(), std::gcd(a, 2 * beta), {}};

  std::vector<i64> parts;
  for (const auto& [q, e] : fa.factors) {
    const i64 aq = ipow(q, e);
    parts.push_back(aq);
    const i64 plus = mod(beta, aq), minus = mod(-beta, aq);
    auto roots = sqrt_mod(-b, aq);
    std::vector<i64> expected{std::min(plus, minus), std::max(plus, minus)};
    if (plus == minus || roots != expected) {
      throw std::invalid_argument("q_subset_decomposition: square roots of -b modulo " +
                                  std::to_string(aq) + " are not exactly +-beta");
    }
  }

  const auto divisors = factorize(an).divisors();
  const std::size_t k = parts.size();
  const i64 g = out.gcd_a_2beta;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    QSubsetTerm t{};
    t.a_part = 1;
    t.gcd_part = 1;
    std::vector<i64> residues;
    for (std::size_t i = 0; i < k; ++i) {
      const bool in = (mask >> i) & 1;
      residues.push_back(mod(in ? beta : -beta, parts[i]));
      if (in) {
        t.subset.push_back(out.primes[i]);
        t.a_part *= parts[i];
        t.gcd_part *= p_part(g, out.primes[i]);
      }
    }
    t.a_complement = a / t.a_part;
    t.gcd_complement = g / t.gcd_part;
    t.beta_tilde = k == 0 ? 0 : crt(residues, parts);
    t.inner_sum = 0;
    admissible_pairs(a, beta, t.beta_tilde, divisors, an, [&](i64 d1, i64 d2) {
      t.inner_sum += std::min(d1, d2);
      t.factorizations.emplace_back(d1, d2);
    });
    out.terms.push_back(std::move(t));
  }
  return out;
}

i64 SubprogressionWitness::squarefree_kernel() const {
  i64 r = 1;
  for (i64 q : factorize(a).primes()) r *= q;
  return r;
}

std::vector<std::string> witness_violations(const SubprogressionWitness& w) {
  std::vector<std::string> bad;
  if (w.a <= 0 || w.a_tilde <= 0) {
    bad.push_back("moduli must be positive");
    return bad;
  }
  if (w.a % w.a_tilde != 0 || mod(w.b - w.b_tilde, w.a_tilde) != 0) {
    bad.push_back("(i) a Z + b is not contained in a_tilde Z + b_tilde");
  }
  if (mod(mul_mod(mod(w.beta, w.a), mod(w.beta, w.a), w.a) + mod(w.b, w.a), w.a) != 0) {
    bad.push_back("(ii) -b is not beta^2 modulo a");
  }
  for (const auto& [q, e] : factorize(w.a).factors) {
    const i64 aq = ipow(q, e);
    if (std::gcd(aq, 2 * w.beta) == aq) {
      bad.push_back("(iii) gcd(a_" + std::to_string(q) + ", 2 beta) is not proper");
    }
  }
  const bool p_ok = w.p_big >= 2 && is_prime(w.p_big) && w.a % w.p_big == 0;
  if (!p_ok || w.a >= checked_mul(w.p_big, w.p_big) || w.beta < 0 || 2 * w.beta >= w.p_big) {
    bad.push_back("(iv) p_big must be a prime divisor of a with a < p_big^2 and 0 <= 2 beta < p_big");
  }
  return bad;
}

SubprogressionWitness subprogression_construct(i64 a_tilde, i64 b_tilde, i64 beta) {
  if (a_tilde <= 0) throw std::invalid_argument("subprogression_construct: a_tilde must be positive");
  const i64 bt = mod(beta, a_tilde);
  require_root(a_tilde, b_tilde, bt, "subprogression_construct");
  if (bt == 0) {
    throw std::invalid_argument("subprogression_construct: beta = 0 (mod a_tilde) is not supported");
  }

  const i64 two_beta = 2 * bt;
  i64 base = 1;
  for (const auto& [q, e] : factorize(a_tilde).factors) {
    base = checked_mul(base, ipow(q, std::max(e, ord_p(two_beta, q) + 1)));
  }
  i64 p = std::max(base, two_beta);
  do {
    p = next_prime(p);
  } while (base % p == 0);

  SubprogressionWitness w{a_tilde, mod(b_tilde, a_tilde), checked_mul(base, p), 0, bt, p, base};
  w.b = mod(-mul_mod(bt, bt, w.a), w.a);
  if (auto bad = witness_violations(w); !bad.empty()) {
    throw std::logic_error("subprogression_construct: " + bad.front());
  }
  return w;
}

i64 PropositionPrimes::first_index() const {
  return two_beta_is_gcd ? gcd_a_2beta : checked_mul(gcd_a_2beta, *p);
}

i64 PropositionPrimes::second_index() const {
  return two_beta_is_gcd ? checked_mul(gcd_a_2beta, p_prime)
                         : checked_mul(checked_mul(gcd_a_2beta, *p), p_prime);
}

PropositionPrimes find_proposition_primes(const SubprogressionWitness& w) {
  const i64 a = w.a;
  const i64 two_beta = 2 * w.beta;
  const i64 g = std::gcd(a, two_beta);
  PropositionPrimes out{g, mod(two_beta - g, a) == 0, std::nullopt, 0};
  const i64 cofactor = a / g;
  if (out.two_beta_is_gcd) {
    out.p_prime = first_prime_in_class(1, a, cofactor);
  } else {
    out.p = first_prime_in_class(two_beta / g, cofactor, cofactor);
    out.p_prime = first_prime_in_class(1, a, checked_mul(*out.p, cofactor));
  }
  return out;
}

Rational hol_product_coefficient(i64 a, i64 b, i64 beta, i64 n, const HurwitzTable& table) {
  require_root(a, b, beta, "hol_product_coefficient");
  if (n < 0) throw std::invalid_argument("hol_product_coefficient: n must be nonnegative");
  const Rational precision(n + 1);
  // U_{a,b} needs E^hol up to exponent a (n + 1).
  const QSeries eis = eisenstein_hol(precision * a, table);
  const QSeries sieved = u_operator(eis, a, b);
  const QSeries theta = theta_series(a, beta, precision) + theta_series(a, -beta, precision);
  return multiply(sieved, theta).coefficient_at(Rational(n));
}

Rational exact_projection_coefficient(i64 a, i64 b, i64 beta, i64 n, const HurwitzTable& table) {
  Rational value = hol_product_coefficient(a, b, beta, n, table);
  Rational correction(0);
  for (i64 bt : sqrt_mod(-b, a)) {
    correction += proj_theta_product(a, bt, beta, n) + proj_theta_product(a, bt, -beta, n);
  }
  return value + correction / 16;
}

}  // namespace hcl
