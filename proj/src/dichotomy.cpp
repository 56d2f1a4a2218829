#include "hcl/dichotomy.hpp"

#include "hcl/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hcl {

bool AssumptionReport::pass() const {
  return std::all_of(primes.begin(), primes.end(), [](const auto& e) { return e.pass(); });
}

AssumptionReport check_assumptions(i64 a, i64 b) {
  if (a <= 0) throw std::invalid_argument("check_assumptions: a must be positive");
  const i64 q = a / std::gcd(a, mod(b, a));
  AssumptionReport r;
  for (i64 p : factorize(a).primes()) {
    r.primes.push_back({p, q % p == 0 ? ord_p(q, p) : 0, p == 2 ? 2 : 1});
  }
  return r;
}

i64 hecke_value(i64 D, i64 f, i64 p) {
  if (f <= 0) throw std::invalid_argument("hecke_value: f must be positive");
  const i64 fp = p_part(f, p);
  if (fp == 1) return 1;
  return sigma1(fp) - kronecker(-D, p) * sigma1(fp / p);
}

i64 hecke_condition(i64 D, i64 f, i64 p, i64 ell) { return mod(hecke_value(D, f, p), ell); }

std::vector<RepresentationRow> enumerate_representations(i64 a, i64 b, i64 N, unsigned jobs) {
  const auto prog = ArithmeticProgression::make(a, b);
  const auto primes = factorize(prog.a).primes();
  std::vector<i64> ns;
  for (i64 n = prog.b == 0 ? prog.a : prog.b; n <= N; n += prog.a) {
    if (is_discriminant_magnitude(n)) ns.push_back(n);
  }
  std::vector<RepresentationRow> rows(ns.size());
  parallel_for(ns.size(), jobs, [&](std::size_t i) {
    const auto [D, f] = fundamental_decomposition(ns[i]);
    RepresentationRow row{ns[i], D, f, {}};
    for (i64 p : primes) {
      row.primes.push_back({p, p_part(f, p), kronecker(-D, p), hecke_value(D, f, p)});
    }
    rows[i] = std::move(row);
  });
  return rows;
}

std::string to_string(DichotomyCase c) {
  switch (c) {
    case DichotomyCase::FundamentalDivisibility: return "fundamental_divisibility";
    case DichotomyCase::HeckeCondition: return "hecke_condition";
    case DichotomyCase::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DichotomyReport classify(i64 ell, i64 a, i64 b, i64 N, const HurwitzTable& table, unsigned jobs) {
  const auto prog = ArithmeticProgression::make(a, b);
  const auto v = verify_congruence(ell, prog.a, prog.b, N, table);
  if (!v.ok) {
    throw DichotomyPrecondition("congruence fails at " + std::to_string(*v.first_counterexample));
  }
  DichotomyReport r{ell, prog.a, prog.b, N, DichotomyCase::Inconclusive, std::nullopt,
                    check_assumptions(prog.a, prog.b), {}, {}};
  if (!r.assumptions.pass()) throw DichotomyPrecondition("ord assumptions on a / gcd(a, b) fail");

  r.evidence = enumerate_representations(prog.a, prog.b, N, jobs);

  std::map<i64, i64> h;
  for (const auto& row : r.evidence) {
    if (row.D > 4) h.emplace(row.D, table[row.D].twelve_h / 12);
  }
  for (const auto& [D, value] : h) r.h_values.push_back({D, value, mod(value, ell)});

  if (r.evidence.empty()) return r;

  const std::size_t nprimes = r.evidence.front().primes.size();
  for (std::size_t i = 0; i < nprimes; ++i) {
    const bool all_zero = std::all_of(r.evidence.begin(), r.evidence.end(), [&](const auto& row) {
      return mod(row.primes[i].hecke, ell) == 0;
    });
    if (!all_zero) continue;
    const auto& first = r.evidence.front().primes[i];
    HeckeWitness w{first.prime, first.kronecker, first.f_p, true, {}, {}};
    for (const auto& row : r.evidence) {
      const auto& d = row.primes[i];
      if (d.f_p != w.f_p || d.kronecker != w.kronecker) w.unique = false;
    }
    w.prime_power = ArithmeticProgression::make(p_part(prog.a, w.prime), prog.b);
    w.prime_power_check = verify_congruence(ell, w.prime_power.a, w.prime_power.b, N, table);
    r.verdict = DichotomyCase::HeckeCondition;
    r.witness = w;
    return r;
  }

  if (!r.h_values.empty() &&
      std::all_of(r.h_values.begin(), r.h_values.end(), [](const auto& x) { return x.h_mod_ell == 0; })) {
    r.verdict = DichotomyCase::FundamentalDivisibility;
  }
  return r;
}

nlohmann::ordered_json to_json(const DichotomyReport& report, long max_rows) {
  using json = nlohmann::ordered_json;
  json j;
  j["ell"] = report.ell;
  j["a"] = report.a;
  j["b"] = report.b;
  j["n_max"] = report.n_max;
  j["case"] = to_string(report.verdict);
  if (report.witness) {
    const auto& w = *report.witness;
    j["witness"] = {{"p", w.prime},
                    {"kronecker", w.kronecker},
                    {"f_p", w.f_p},
                    {"unique", w.unique},
                    {"prime_power_a", w.prime_power.a},
                    {"prime_power_b", w.prime_power.b},
                    {"prime_power_holds", w.prime_power_check.ok}};
  } else {
    j["witness"] = nullptr;
  }
  json assumptions = json::array();
  for (const auto& e : report.assumptions.primes) {
    assumptions.push_back({{"p", e.prime}, {"ord", e.ord}, {"required", e.required}, {"pass", e.pass()}});
  }
  j["assumptions"] = std::move(assumptions);
  json hv = json::array();
  for (const auto& x : report.h_values) hv.push_back({{"D", x.D}, {"h", x.h}, {"h_mod_ell", x.h_mod_ell}});
  j["h_values_count"] = report.h_values.size();
  j["evidence_count"] = report.evidence.size();
  json rows = json::array();
  const std::size_t limit =
      max_rows < 0 ? report.evidence.size()
                   : std::min(report.evidence.size(), static_cast<std::size_t>(max_rows));
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& row = report.evidence[i];
    json primes = json::array();
    for (const auto& d : row.primes) {
      primes.push_back({{"p", d.prime},
                        {"f_p", d.f_p},
                        {"kronecker", d.kronecker},
                        {"hecke", d.hecke},
                        {"hecke_mod_ell", mod(d.hecke, report.ell)}});
    }
    rows.push_back({{"n", row.n}, {"D", row.D}, {"f", row.f}, {"primes", std::move(primes)}});
  }
  j["evidence"] = std::move(rows);
  if (max_rows >= 0 && report.h_values.size() > static_cast<std::size_t>(max_rows)) {
    hv.erase(hv.begin() + max_rows, hv.end());
  }
  j["h_values"] = std::move(hv);
  return j;
}

}  // namespace hcl
