#include "doctest.h"

#include "../oracles.hpp"
#include "hcl/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace hcl;

namespace {

const HurwitzTable& table() {
  static const HurwitzTable t = build_table(1'000'000);
  return t;
}

bool contains(const std::vector<CongruenceCertificate>& v, i64 a, i64 b) {
  return std::any_of(v.begin(), v.end(), [&](const auto& c) {
    return c.progression.a == a && c.progression.b == b;
  });
}

}  // namespace

TEST_CASE("verify congruence examples") {
  CHECK(verify_congruence(5, 125, 25, 1'000'000, table()).ok);
  CHECK(verify_congruence(11, 512, 192, 1'000'000, table()).ok);
  const auto bad = verify_congruence(5, 4, 3, 10'000, table());
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_counterexample == 3);
  CHECK(verify_congruence(5, 125, 25 + 125 * 3, 1'000'000, table()).ok);
  CHECK_FALSE(verify_congruence(5, 125, 0, 1'000'000, table()).ok);  // H(0) = -1/12
  CHECK_THROWS_AS(verify_congruence(5, 125, 25, 2'000'000, table()), InsufficientTable);
  CHECK_THROWS(verify_congruence(3, 125, 25, 100, table()));
  CHECK_THROWS(verify_congruence(9, 125, 25, 100, table()));
}

TEST_CASE("verify congruence against the form oracle") {
  const auto small = build_table(3000);
  for (i64 ell : {5, 7}) {
    for (i64 a = 1; a <= 30; ++a) {
      for (i64 b = 0; b < a; ++b) {
        std::optional<i64> first;
        for (i64 v = b; v <= 3000; v += a) {
          if (oracle::twelve_h(v) % ell != 0) {
            first = v;
            break;
          }
        }
        const auto r = verify_congruence(ell, a, b, 3000, small);
        CHECK(r.ok == !first.has_value());
        CHECK(r.first_counterexample == first);
      }
    }
  }
}

TEST_CASE("holomorphic class") {
  CHECK(classify_progression(125, 25) == HolomorphicClass::NonHolomorphic);
  CHECK(classify_progression(27, 9) == HolomorphicClass::Holomorphic);
  CHECK(classify_progression(1, 0) == HolomorphicClass::NonHolomorphic);
  CHECK(to_string(HolomorphicClass::Holomorphic) == "holomorphic");
}

TEST_CASE("trivially vanishing progressions") {
  CHECK(trivially_vanishing(4, 1));
  CHECK(trivially_vanishing(4, 2));
  CHECK(trivially_vanishing(8, 5));
  CHECK_FALSE(trivially_vanishing(4, 3));
  CHECK_FALSE(trivially_vanishing(2, 1));
  CHECK_FALSE(trivially_vanishing(6, 1));
}

TEST_CASE("search") {
  CHECK(search(5, 4, 2000, table()).empty());
  // every (a, b) with a <= 4 either fails or is trivially vanishing
  for (i64 a = 1; a <= 4; ++a) {
    for (i64 b = 0; b < a; ++b) {
      CHECK((trivially_vanishing(a, b) || !verify_congruence(5, a, b, 2000, table()).ok));
    }
  }
  const auto five = search(5, 125, 1'000'000, table());
  CHECK(contains(five, 125, 25));
  CHECK(contains(five, 27, 9));
  CHECK(contains(five, 125, 100));
  CHECK_FALSE(contains(five, 125, 50));
  CHECK(contains(search(7, 125, 1'000'000, table()), 125, 50));
  CHECK(std::is_sorted(five.begin(), five.end(), [](const auto& x, const auto& y) {
    return x.progression < y.progression;
  }));
  for (const auto& c : five) {
    CHECK(c.maximal_up_to_check);
    CHECK(c.n_max_checked == 1'000'000);
    CHECK(maximal_up_to(5, c.progression.a, c.progression.b, 1'000'000, table()));
  }
  CHECK(contains(search(7, 343, 1'000'000, table()), 343, 147));
  CHECK_THROWS(search(5, 125, 1000, table()));
}

TEST_CASE("search is independent of thread count") {
  const auto one = search(7, 150, 100'000, table(), 1);
  const auto four = search(7, 150, 100'000, table(), 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].progression == four[i].progression);
}

TEST_CASE("congruences restrict to sub-progressions") {
  for (const auto& c : search(5, 130, 200'000, table())) {
    const auto [a, b] = c.progression;
    for (i64 k = 1; k <= 4; ++k) {
      for (i64 j = 0; j < k; ++j) CHECK(verify_congruence(5, k * a, b + j * a, 200'000, table()).ok);
    }
  }
}

TEST_CASE("square class check") {
  const CongruenceCertificate cert{5, {125, 25}, 1'000'000, HolomorphicClass::NonHolomorphic, true};
  const auto r = square_class_check(cert, 2, 1'000'000, table());
  CHECK(r.ok);
  CHECK(r.units_checked == std::vector<i64>{1, 2});
  CHECK(verify_congruence(5, 125, 100, 1'000'000, table()).ok);

  const auto one = square_class_check(cert, 1, 1'000'000, table());
  CHECK(one.ok == verify_congruence(5, 125, 25, 1'000'000, table()).ok);

  // u and u + a give the same residue b u^2
  for (i64 u = 1; u < 20; ++u) CHECK(mul_mod(25, u * u, 125) == mul_mod(25, (u + 125) * (u + 125), 125));

  // (5, 4, 3) fails at u = 1 already
  const CongruenceCertificate bad{5, {4, 3}, 1000, HolomorphicClass::NonHolomorphic, true};
  const auto f = square_class_check(bad, 3, 1000, table());
  CHECK_FALSE(f.ok);
  CHECK(f.failures.front() == std::pair<i64, i64>{1, 3});
}

TEST_CASE("square class witness") {
  CHECK(square_class_witness(10, 49, 3, 7) == 6);
  CHECK(square_class_witness(3, 49, 3, 7) == 1);
  CHECK_THROWS(square_class_witness(10, 49, 3, 2));
  CHECK_THROWS(square_class_witness(11, 49, 3, 7));  // 11 != 3 (mod 7)
  CHECK_THROWS(square_class_witness(4, 35, 4, 7));   // ord_7 too small

  std::mt19937_64 rng(21);
  const i64 primes[] = {3, 5, 7, 11, 13};
  int done = 0;
  while (done < 300) {
    const i64 p = primes[rng() % 5];
    const int k = static_cast<int>(rng() % 2);
    const int r = 2 + static_cast<int>(rng() % 2);
    const i64 rest = 1 + static_cast<i64>(rng() % 12);
    if (rest % p == 0) continue;
    const i64 a = ipow(p, k + r) * rest;
    i64 b = ipow(p, k) * (1 + static_cast<i64>(rng() % 200));
    if (ord_p(b, p) != k) continue;
    b = mod(b, a);
    const i64 step = a / p;
    const i64 m = b + step * static_cast<i64>(rng() % p);
    const i64 u = square_class_witness(m, a, b, p);
    CHECK(std::gcd(u, a) == 1);
    CHECK(mod(u, a / ipow(p, k + r)) == mod(1, rest));
    CHECK(mod(m - b * u % a * u, a) == 0);
    // nothing smaller works
    for (i64 v = 1; v < u; ++v) {
      const bool fits = std::gcd(v, a) == 1 && mod(v, rest) == mod(1, rest) && mod(m - b * v % a * v, a) == 0;
      CHECK_FALSE(fits);
    }
    ++done;
  }
}

TEST_CASE("ord bound report") {
  const auto r = ord_bound_report(512, 192);
  REQUIRE(r.size() == 1);
  CHECK(r[0].prime == 2);
  CHECK(r[0].ord == 3);
  CHECK(r[0].within());
  const auto s = ord_bound_report(125, 25);
  REQUIRE(s.size() == 1);
  CHECK(s[0].prime == 5);
  CHECK(s[0].ord == 1);
  CHECK(ord_bound_report(1, 0).empty());
  CHECK_FALSE(ord_bound_report(1024, 192)[0].within());
  CHECK_FALSE(ord_bound_report(27, 1)[0].within());
}

TEST_CASE("certificate json") {
  const CongruenceCertificate c{5, {27, 9}, 1'000'000, HolomorphicClass::Holomorphic, true};
  CHECK(to_json(c).dump() ==
        R"({"ell":5,"a":27,"b":9,"n_max":1000000,"class":"holomorphic","maximal":true})");
}
