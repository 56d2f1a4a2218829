#include "doctest.h"

#include "../oracles.hpp"
#include "hcl/holproj.hpp"
#include "hcl/qseries.hpp"

#include <random>

using namespace hcl;

TEST_CASE("proj_theta_product examples") {
  CHECK(proj_theta_product(1, 0, 0, 3) == -16);
  CHECK(proj_theta_product(1, 0, 0, 1) == -8);
  CHECK(proj_theta_product(1, 0, 0, 0) == 0);
  CHECK_THROWS(proj_theta_product(0, 0, 0, 1));
  CHECK_THROWS(proj_theta_product(1, 0, 0, -1));
}

TEST_CASE("proj_theta_product against direct enumeration") {
  for (i64 a = 1; a <= 12; ++a) {
    for (i64 bt = 0; bt < a; ++bt) {
      for (i64 beta = 0; beta < a; ++beta) {
        for (i64 n = 0; n <= 40; ++n) {
          if (proj_theta_product(a, bt, beta, n) != oracle::proj_p(a, bt, beta, n)) {
            FAIL("a=" << a << " bt=" << bt << " beta=" << beta << " n=" << n);
          }
        }
      }
    }
  }
}

TEST_CASE("nonhol_coefficient examples") {
  CHECK(nonhol_coefficient(5, 4, 1, 6) == -2);
  CHECK(nonhol_coefficient(55, 54, 1, 167) == -55);
  CHECK(nonhol_coefficient(5, 4, 1, 1) == 0);  // 5 = 1 * 5 has d1 = 1, d2 = 0 mod 5
  CHECK_THROWS(nonhol_coefficient(5, 4, 1, 5));  // 25 is a square
  CHECK_THROWS(nonhol_coefficient(5, 4, 2, 6));  // 4 != -4 (mod 5)
}

TEST_CASE("nonhol_coefficient against divisor scan") {
  for (i64 a = 1; a <= 24; ++a) {
    for (i64 b = 0; b < a; ++b) {
      for (i64 beta : oracle::roots(-b, a)) {
        for (i64 n = 1; n <= 60; ++n) {
          const i64 r = oracle::isqrt(a * n);
          if (r * r == a * n) continue;
          if (nonhol_coefficient(a, b, beta, n) != Rational(-oracle::nonhol_twice_neg(a, b, beta, n), 2)) {
            FAIL("a=" << a << " b=" << b << " beta=" << beta << " n=" << n);
          }
        }
      }
    }
  }
}

TEST_CASE("sign enumeration reduces to the parity aware factorization sum") {
  for (i64 a = 1; a <= 16; ++a) {
    for (i64 b = 0; b < a; ++b) {
      for (i64 beta : oracle::roots(-b, a)) {
        for (i64 n = 1; n <= 50; ++n) {
          const i64 r = oracle::isqrt(a * n);
          if (r * r == a * n) continue;
          Rational lhs(0);
          for (i64 bt : sqrt_mod(-b, a)) {
            lhs += proj_theta_product(a, bt, beta, n) + proj_theta_product(a, bt, -beta, n);
          }
          lhs /= 16;
          CHECK(lhs == Rational(-oracle::parity_sum_twice_neg(a, beta, n), 2));
        }
      }
    }
  }
}

TEST_CASE("q subset decomposition") {
  const auto d = q_subset_decomposition(5, 4, 1, 6);
  CHECK(d.terms.size() == 2);
  CHECK(d.total() == nonhol_coefficient(5, 4, 1, 6));
  CHECK(d.terms[0].inner_sum == d.terms[1].inner_sum);  // beta -> -beta symmetry

  const auto e = q_subset_decomposition(55, 54, 1, 167);
  CHECK(e.primes == std::vector<i64>{5, 11});
  CHECK(e.total() == -55);
  const auto c = e.contributing();
  REQUIRE(c.size() == 2);
  CHECK(c[0]->subset.empty());
  CHECK(c[1]->subset == std::vector<i64>{5, 11});
  CHECK(c[1]->beta_tilde == 1);
  CHECK(c[0]->beta_tilde == 54);
  CHECK(c[1]->a_part == 55);
  CHECK(c[1]->a_complement == 1);

  // 1 has four square roots mod 8, so the +-beta shape does not apply
  CHECK_THROWS(q_subset_decomposition(8, 7, 1, 3));
}

TEST_CASE("q subset totals match nonhol_coefficient") {
  int checked = 0;
  for (i64 a = 2; a <= 60; ++a) {
    for (i64 b = 1; b < a; ++b) {
      for (i64 beta : sqrt_mod(-b, a)) {
        for (i64 n = 1; n <= 40; ++n) {
          if (is_square(a * n)) continue;
          try {
            const auto d = q_subset_decomposition(a, b, beta, n);
            CHECK(d.total() == nonhol_coefficient(a, b, beta, n));
            ++checked;
          } catch (const std::invalid_argument&) {
          }
        }
      }
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("subprogression construction") {
  const auto w = subprogression_construct(5, 4, 1);
  CHECK(w.a == 35);
  CHECK(w.b == 34);
  CHECK(w.p_big == 7);
  CHECK(w.base_modulus == 5);
  CHECK(w.squarefree_kernel() == 35);
  CHECK(witness_violations(w).empty());

  CHECK_THROWS(subprogression_construct(1, 0, 0));
  CHECK_THROWS(subprogression_construct(5, 0, 5));
  CHECK_THROWS(subprogression_construct(5, 4, 2));

  // beta is reduced first
  CHECK(subprogression_construct(5, 4, 6).a == 35);

  auto broken = w;
  broken.b = 33;
  CHECK_FALSE(witness_violations(broken).empty());
  broken = w;
  broken.p_big = 5;
  CHECK_FALSE(witness_violations(broken).empty());
}

TEST_CASE("subprogression postcondition on random inputs") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> da(2, 400);
  int done = 0;
  while (done < 200) {
    const i64 at = da(rng);
    const i64 beta = std::uniform_int_distribution<i64>(1, at - 1)(rng);
    const i64 bt = mod(-beta * beta, at);
    const auto w = subprogression_construct(at, bt, beta);
    CHECK(witness_violations(w).empty());
    CHECK(w.a == w.base_modulus * w.p_big);
    ++done;
  }
}

TEST_CASE("proposition primes") {
  SubprogressionWitness w{55, 54, 55, 54, 1, 11, 5};
  const auto pp = find_proposition_primes(w);
  CHECK(pp.gcd_a_2beta == 1);
  CHECK_FALSE(pp.two_beta_is_gcd);
  CHECK(pp.p == 167);
  CHECK(pp.p_prime == 9241);  // first prime = 1 (mod 55) above 9185
  CHECK(pp.first_index() == 167);
  CHECK(pp.second_index() == 167 * 9241);
  CHECK(nonhol_coefficient(55, 54, 1, pp.first_index()) == -55);

  // 2 beta = gcd(a, 2 beta): only p' is chosen
  const auto v = subprogression_construct(4, 3, 1);
  CHECK(v.a == 20);
  CHECK(v.b == 19);
  const auto q = find_proposition_primes(v);
  CHECK(q.two_beta_is_gcd);
  CHECK(q.gcd_a_2beta == 2);
  CHECK_FALSE(q.p.has_value());
  CHECK(q.p_prime == 41);
  CHECK(q.first_index() == 2);
  CHECK(q.second_index() == 82);
}

TEST_CASE("exact projection coefficient") {
  const auto t = build_table(20000);
  std::mt19937_64 rng(9);
  int checked = 0;
  for (i64 a = 1; a <= 20; ++a) {
    for (i64 b = 0; b < a; ++b) {
      for (i64 beta : sqrt_mod(-b, a)) {
        const i64 n = std::uniform_int_distribution<i64>(1, 60)(rng);
        // H(a n - m^2) over m = +-beta (mod a), one theta factor each
        Rational hol(0);
        for (i64 s : {beta, -beta}) {
          for (i64 m = -a * n; m <= a * n; ++m) {
            if (mod(m - s, a) == 0 && m * m <= a * n) hol += hurwitz(a * n - m * m).value();
          }
        }
        Rational corr(0);
        for (i64 bt : oracle::roots(-b, a)) corr += oracle::proj_p(a, bt, beta, n) + oracle::proj_p(a, bt, -beta, n);
        CHECK(hol_product_coefficient(a, b, beta, n, t) == hol);
        CHECK(exact_projection_coefficient(a, b, beta, n, t) == hol + corr / 16);
        ++checked;
      }
    }
  }
  CHECK(checked > 50);

  // a = 1: sum over D + m^2 = n of H(D) times 2 (theta_{1,0} counted twice)
  for (i64 n = 0; n <= 50; ++n) {
    Rational direct(0);
    for (i64 m = -10; m <= 10; ++m) {
      if (m * m <= n) direct += 2 * hurwitz(n - m * m).value();
    }
    CHECK(hol_product_coefficient(1, 0, 0, n, t) == direct);
    CHECK(exact_projection_coefficient(1, 0, 0, n, t) ==
          direct + Rational(2 * oracle::proj_p(1, 0, 0, n), 16));
  }
  CHECK_THROWS_AS(exact_projection_coefficient(500, 0, 0, 100, t), InsufficientTable);
}
