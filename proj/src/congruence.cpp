#include "hcl/congruence.hpp"

#include "hcl/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hcl {

namespace {

void require_ell(i64 ell) {
  if (ell <= 3 || !is_prime(ell)) {
    throw std::invalid_argument("ell must be a prime > 3, got " + std::to_string(ell));
  }
}

}  // namespace

ArithmeticProgression ArithmeticProgression::make(i64 a, i64 b) {
  if (a <= 0) throw std::invalid_argument("progression modulus must be positive");
  return {a, mod(b, a)};
}

std::string to_string(HolomorphicClass c) {
  return c == HolomorphicClass::Holomorphic ? "holomorphic" : "nonholomorphic";
}

HolomorphicClass classify_progression(i64 a, i64 b) {
  if (a <= 0) throw std::invalid_argument("classify_progression: a must be positive");
  return sqrt_mod(-b, a).empty() ? HolomorphicClass::Holomorphic : HolomorphicClass::NonHolomorphic;
}

VerifyResult verify_congruence(i64 ell, i64 a, i64 b, i64 N, const HurwitzTable& table) {
  require_ell(ell);
  const auto prog = ArithmeticProgression::make(a, b);
  if (N < 0) throw std::invalid_argument("verify_congruence: N must be nonnegative");
  if (!table.covers(N)) throw InsufficientTable(N, table.n_max());
  VerifyResult r;
  for (i64 v = prog.b; v <= N; v += prog.a) {
    ++r.values_checked;
    if (table[v].twelve_h % ell != 0) {
      r.first_counterexample = v;
      return r;
    }
  }
  r.ok = true;
  return r;
}

bool trivially_vanishing(i64 a, i64 b) {
  if (a % 4 != 0) return false;
  const i64 r = mod(b, 4);
  return r == 1 || r == 2;
}

bool maximal_up_to(i64 ell, i64 a, i64 b, i64 N, const HurwitzTable& table) {
  for (i64 q : factorize(a).primes()) {
    if (verify_congruence(ell, a / q, b, N, table).ok) return false;
  }
  return true;
}

std::vector<CongruenceCertificate> search(i64 ell, i64 a_max, i64 N, const HurwitzTable& table,
                                          unsigned jobs) {
  require_ell(ell);
  if (a_max < 1) throw std::invalid_argument("search: a_max must be positive");
  if (N < 100 * a_max) throw std::invalid_argument("search: N must be at least 100 a_max");
  if (!table.covers(N)) throw InsufficientTable(N, table.n_max());

  std::vector<ArithmeticProgression> candidates;
  for (i64 a = 1; a <= a_max; ++a) {
    for (i64 b = 0; b < a; ++b) {
      if (!trivially_vanishing(a, b)) candidates.push_back({a, b});
    }
  }
  std::vector<char> keep(candidates.size(), 0);
  parallel_for(candidates.size(), jobs, [&](std::size_t i) {
    const auto [a, b] = candidates[i];
    keep[i] = verify_congruence(ell, a, b, N, table).ok && maximal_up_to(ell, a, b, N, table);
  });

  std::vector<CongruenceCertificate> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!keep[i]) continue;
    const auto p = candidates[i];
    out.push_back({ell, p, N, classify_progression(p.a, p.b), true});
  }
  return out;
}

SquareClassResult square_class_check(const CongruenceCertificate& cert, i64 u_max, i64 N,
                                     const HurwitzTable& table) {
  const auto [a, b] = cert.progression;
  SquareClassResult r;
  for (i64 u = 1; u <= u_max; ++u) {
    if (std::gcd(u, a) != 1) continue;
    r.units_checked.push_back(u);
    const i64 bu = mul_mod(b, mul_mod(u, u, a), a);
    const auto v = verify_congruence(cert.ell, a, bu, N, table);
    if (!v.ok) {
      r.ok = false;
      r.failures.emplace_back(u, *v.first_counterexample);
    }
  }
  return r;
}

i64 square_class_witness(i64 m, i64 a, i64 b, i64 p) {
  if (a <= 0) throw std::invalid_argument("square_class_witness: a must be positive");
  if (p == 2 || !is_prime(p) || a % p != 0) {
    throw std::invalid_argument("square_class_witness: p must be an odd prime dividing a");
  }
  const i64 g = std::gcd(a, mod(b, a));
  const int k = ord_p(g, p);
  const int r = ord_p(a / g, p);
  if (r < 2) throw std::invalid_argument("square_class_witness: ord_p(a / gcd(a, b)) must be >= 2");
  if (mod(m - b, a / p) != 0) throw std::invalid_argument("square_class_witness: m != b (mod a/p)");

  const i64 pk = ipow(p, k);
  const i64 pr = ipow(p, r);
  const i64 ap = pk * pr;
  const i64 rest = a / ap;
  // p^k exactly divides both b and m here, so solve (b/p^k) u^2 = m/p^k (mod p^r).
  const i64 bp = mod(b, ap) / pk;
  const i64 mp = mod(m, ap) / pk;
  const auto inv = inverse_mod(bp, pr);
  if (!inv) throw std::invalid_argument("square_class_witness: b / p^k is not a unit mod p^r");
  const i64 target = mul_mod(mp, *inv, pr);

  std::optional<i64> best;
  const i64 moduli[2] = {pr, rest};
  for (i64 s : sqrt_mod(target, pr)) {
    if (s % p == 0) continue;
    const i64 residues[2] = {s, mod(1, rest)};
    i64 u = crt(residues, moduli);
    if (std::gcd(u, a) != 1) continue;
    if (mod(m - mul_mod(mod(b, a), mul_mod(u, u, a), a), a) != 0) continue;
    if (!best || u < *best) best = u;
  }
  if (!best) throw std::invalid_argument("square_class_witness: no unit u with m = b u^2 (mod a)");
  return *best;
}

std::vector<OrdBound> ord_bound_report(i64 a, i64 b) {
  if (a <= 0) throw std::invalid_argument("ord_bound_report: a must be positive");
  const i64 q = a / std::gcd(a, mod(b, a));
  std::vector<OrdBound> out;
  for (const auto& [p, e] : factorize(q).factors) out.push_back({p, e, p == 2 ? 3 : 1});
  return out;
}

nlohmann::ordered_json to_json(const CongruenceCertificate& cert) {
  nlohmann::ordered_json j;
  j["ell"] = cert.ell;
  j["a"] = cert.progression.a;
  j["b"] = cert.progression.b;
  j["n_max"] = cert.n_max_checked;
  j["class"] = to_string(cert.holomorphic_class);
  j["maximal"] = cert.maximal_up_to_check;
  return j;
}

}  // namespace hcl
