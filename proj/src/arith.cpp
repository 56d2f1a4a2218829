#include "hcl/arith.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace hcl {

namespace {

using i128 = __int128;

const std::vector<std::int32_t>& prime_table() {
  static const std::vector<std::int32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit, false);
    std::vector<std::int32_t> out;
    out.reserve(80'000);
    for (i64 i = 2; i < kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::int32_t>(i));
      for (i64 j = i * i; j < kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulm = [n](u64 x, u64 y) {
    return static_cast<u64>((static_cast<unsigned __int128>(x) * y) % n);
  };
  // Deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = mulm(x, base);
      base = mulm(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulm(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n odd composite.
u64 pollard_rho(u64 n) {
  auto mulm = [n](u64 x, u64 y) {
    return static_cast<u64>((static_cast<unsigned __int128>(x) * y) % n);
  };
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulm(v, v) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min<u64>(128, r - k); ++i) {
          y = f(y);
          q = mulm(q, x > y ? x - y : y - x);
        }
        g = std::gcd(q, n);
        k += 128;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::vector<i64>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    out.push_back(static_cast<i64>(n));
    return;
  }
  u64 d = pollard_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

// Roots of beta^2 = x modulo p^e, x already reduced.
std::vector<i64> sqrt_mod_prime_power(i64 x, i64 p, int e) {
  const i64 pe = ipow(p, e);
  std::vector<i64> roots;
  if (pe < 10'000) {
    for (i64 r = 0; r < pe; ++r) {
      if (mul_mod(r, r, pe) == x) roots.push_back(r);
    }
    return roots;
  }

  // Roots modulo p first.
  const i64 xp = x % p;
  if (p < 10'000 || p == 2) {
    for (i64 r = 0; r < p; ++r) {
      if (mul_mod(r, r, p) == xp) roots.push_back(r);
    }
  } else if (xp == 0) {
    roots.push_back(0);
  } else if (pow_mod(xp, (p - 1) / 2, p) == 1) {
    // Tonelli-Shanks.
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    i64 z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    i64 m = s, c = pow_mod(z, q, p), t = pow_mod(xp, q, p),
        r = pow_mod(xp, (q + 1) / 2, p);
    while (t != 1) {
      i64 i = 0, tt = t;
      while (tt != 1) {
        tt = mul_mod(tt, tt, p);
        ++i;
      }
      i64 b = c;
      for (i64 j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      r = mul_mod(r, b, p);
    }
    roots.push_back(std::min(r, p - r));
    if (r != p - r) roots.push_back(std::max(r, p - r));
  }

  // Lift p^k -> p^{k+1}.
  i64 pk = p;
  for (int k = 1; k < e && !roots.empty(); ++k) {
    const i64 next = pk * p;
    const i64 target = x % next;
    std::set<i64> lifted;
    for (i64 r : roots) {
      if (p != 2 && r % p != 0) {
        // Unique Hensel lift.
        i64 fr = mod(mul_mod(r, r, next) - target, next);
        i64 inv = *inverse_mod(mod(2 * r, next), next);
        i64 s = mod(r - mul_mod(fr, inv, next), next);
        if (mul_mod(s, s, next) == target) lifted.insert(s);
      } else {
        for (i64 t = 0; t < p; ++t) {
          i64 s = r + t * pk;
          if (mul_mod(s, s, next) == target) lifted.insert(s);
        }
      }
    }
    roots.assign(lifted.begin(), lifted.end());
    pk = next;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

int Factorization::ord(i64 p) const {
  for (const auto& f : factors) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

i64 Factorization::part(i64 p) const { return ipow(p, ord(p)); }

std::vector<i64> Factorization::primes() const {
  std::vector<i64> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

std::vector<i64> Factorization::divisors() const {
  std::vector<i64> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Factorization factorize(i64 n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization out;
  out.n = n;
  i64 rest = n;
  for (std::int32_t p32 : prime_table()) {
    const i64 p = p32;
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (rest > 1) {
    if (rest < kSieveLimit * kSieveLimit) {
      out.factors.push_back({rest, 1});
    } else {
      std::vector<i64> big;
      split_large(static_cast<u64>(rest), big);
      std::sort(big.begin(), big.end());
      for (i64 p : big) {
        if (!out.factors.empty() && out.factors.back().prime == p) {
          ++out.factors.back().exponent;
        } else {
          out.factors.push_back({p, 1});
        }
      }
    }
  }
  return out;
}

std::span<const std::int32_t> small_primes() { return prime_table(); }

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < kSieveLimit) {
    const auto& t = prime_table();
    return std::binary_search(t.begin(), t.end(), static_cast<std::int32_t>(n));
  }
  return miller_rabin(static_cast<u64>(n));
}

i64 next_prime(i64 n) {
  i64 c = std::max<i64>(n + 1, 2);
  while (!is_prime(c)) ++c;
  return c;
}

i64 mod(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

i64 mul_mod(i64 x, i64 y, i64 m) {
  i128 r = static_cast<i128>(x) * y % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

i64 pow_mod(i64 base, i64 exp, i64 m) {
  if (m == 1) return 0;
  i64 result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<i64> inverse_mod(i64 x, i64 m) {
  i64 old_r = mod(x, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) return std::nullopt;
  return mod(old_s, m);
}

i64 checked_mul(i64 x, i64 y) {
  i64 out;
  if (__builtin_mul_overflow(x, y, &out)) {
    throw std::overflow_error("integer overflow in " + std::to_string(x) + " * " +
                              std::to_string(y));
  }
  return out;
}

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

i64 crt(std::span<const i64> residues, std::span<const i64> moduli) {
  i64 x = 0, m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const i64 mi = moduli[i];
    const i64 ri = mod(residues[i], mi);
    // x + m t = ri (mod mi)
    auto inv = inverse_mod(m % mi, mi);
    if (!inv) throw std::invalid_argument("crt: moduli not coprime");
    i64 t = mul_mod(mod(ri - x, mi), *inv, mi);
    const i64 next = checked_mul(m, mi);
    x = mod(x + static_cast<i64>(static_cast<i128>(m) * t % next), next);
    m = next;
  }
  return x;
}

i64 sigma1(i64 n) {
  if (n <= 0) throw std::invalid_argument("sigma1: n must be positive");
  i64 s = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    i64 term = 1, pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      term += pk;
    }
    s = checked_mul(s, term);
  }
  return s;
}

i64 p_part(i64 n, i64 p) {
  if (n <= 0) throw std::invalid_argument("p_part: n must be positive");
  i64 part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

int ord_p(i64 n, i64 p) {
  if (n == 0) throw std::invalid_argument("ord_p: valuation of zero");
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

int kronecker(i64 numerator, i64 modulus) {
  if (modulus <= 0) throw std::invalid_argument("kronecker: modulus must be positive");
  int result = 1;
  i64 n = modulus;
  while (n % 2 == 0) {
    n /= 2;
    if (numerator % 2 == 0) return 0;
    const i64 r8 = mod(numerator, 8);
    if (r8 == 3 || r8 == 5) result = -result;
  }
  // Jacobi symbol for odd n.
  i64 a = mod(numerator, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const i64 r8 = n % 8;
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::vector<i64> sqrt_mod(i64 x, i64 m) {
  if (m <= 0) throw std::invalid_argument("sqrt_mod: modulus must be positive");
  if (m == 1) return {0};
  const Factorization fm = factorize(m);
  std::vector<std::vector<i64>> local;
  std::vector<i64> moduli;
  for (const auto& [p, e] : fm.factors) {
    const i64 pe = ipow(p, e);
    auto roots = sqrt_mod_prime_power(mod(x, pe), p, e);
    if (roots.empty()) return {};
    local.push_back(std::move(roots));
    moduli.push_back(pe);
  }
  std::vector<i64> out;
  std::vector<std::size_t> idx(local.size(), 0);
  std::vector<i64> residues(local.size());
  while (true) {
    for (std::size_t i = 0; i < local.size(); ++i) residues[i] = local[i][idx[i]];
    out.push_back(crt(residues, moduli));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == local[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

bool is_squarefree(i64 n) {
  if (n <= 0) throw std::invalid_argument("is_squarefree: n must be positive");
  for (const auto& f : factorize(n).factors) {
    if (f.exponent > 1) return false;
  }
  return true;
}

bool is_fundamental(i64 D) {
  if (D <= 0) return false;
  if (D % 4 == 3) return is_squarefree(D);
  if (D % 4 == 0) {
    const i64 m = D / 4;
    return (m % 4 == 1 || m % 4 == 2) && is_squarefree(m);
  }
  return false;
}

bool is_discriminant_magnitude(i64 n) { return n > 0 && (n % 4 == 0 || n % 4 == 3); }

FundamentalDecomposition fundamental_decomposition(i64 n) {
  if (!is_discriminant_magnitude(n)) {
    throw std::invalid_argument("fundamental_decomposition: -" + std::to_string(n) +
                                " is not a negative discriminant");
  }
  i64 core = 1, root = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    if (e % 2 == 1) core *= p;
    root *= ipow(p, e / 2);
  }
  if (core % 4 == 3) return {core, root};
  // core = 1, 2 (mod 4) forces root even
  return {4 * core, root / 2};
}

int unit_count(i64 discriminant_magnitude) {
  if (!is_discriminant_magnitude(discriminant_magnitude)) {
    throw std::invalid_argument("unit_count: not a discriminant magnitude");
  }
  if (discriminant_magnitude == 3) return 6;
  if (discriminant_magnitude == 4) return 4;
  return 2;
}

}  // namespace hcl
