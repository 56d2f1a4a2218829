#include "doctest.h"

#include "../oracles.hpp"
#include "hcl/hurwitz.hpp"

#include <random>
#include <sstream>

using namespace hcl;

TEST_CASE("hurwitz examples") {
  CHECK(hurwitz(0).value() == Rational(-1, 12));
  CHECK(hurwitz(3).value() == Rational(1, 3));
  CHECK(hurwitz(4).value() == Rational(1, 2));
  CHECK(hurwitz(23).value() == 3);
  CHECK(hurwitz(275).value() == 5);
  CHECK(hurwitz(12).value() == Rational(4, 3));
  CHECK(hurwitz(147).value() == Rational(7, 3));
  CHECK_THROWS(hurwitz(-1));
}

TEST_CASE("hurwitz against reduced form oracle") {
  for (i64 D = 0; D <= 10000; ++D) {
    if (hurwitz(D).twelve_h != oracle::twelve_h(D)) FAIL("D = " << D);
  }
}

TEST_CASE("hurwitz vanishes exactly off discriminants") {
  for (i64 D = 1; D <= 10000; ++D) {
    const bool zero = hurwitz(D).twelve_h == 0;
    CHECK(zero == (D % 4 == 1 || D % 4 == 2));
  }
}

TEST_CASE("class numbers") {
  CHECK(class_number(23) == 3);
  CHECK(class_number(4) == 1);
  CHECK(class_number(3) == 1);
  CHECK(class_number(11) == 1);
  CHECK_THROWS(class_number(12));
  for (i64 D = 5; D <= 10000; ++D) {
    if (!is_fundamental(D)) continue;
    CHECK(class_number(D) == oracle::class_number(D));
    CHECK(Rational(class_number(D)) == hurwitz(D).value());
  }
}

TEST_CASE("class number formula") {
  CHECK(hurwitz_via_formula(11, 5).value() == 5);
  CHECK(hurwitz_via_formula(3, 1).value() == Rational(1, 3));
  CHECK(hurwitz_via_formula(3, 7) == hurwitz(147));
  CHECK(hurwitz_via_formula(4, 3) == hurwitz(36));
  CHECK_THROWS(hurwitz_via_formula(12, 1));
  for (i64 D = 3; D <= 400; ++D) {
    if (!is_fundamental(D)) continue;
    for (i64 f = 1; f <= 12; ++f) CHECK(hurwitz_via_formula(D, f) == hurwitz(D * f * f));
  }
}

TEST_CASE("table small cases") {
  const auto t0 = build_table(0);
  CHECK(t0.n_max() == 0);
  CHECK(t0[0].twelve_h == -1);
  const auto t4 = build_table(4);
  CHECK(std::vector<std::int32_t>(t4.twelve_h().begin(), t4.twelve_h().end()) ==
        std::vector<std::int32_t>{-1, 0, 0, 4, 6});
  const auto t30 = build_table(30);
  for (i64 D = 0; D <= 30; ++D) {
    const bool nonzero = D % 4 == 0 || D % 4 == 3;
    CHECK((t30[D].twelve_h != 0) == nonzero);
  }
  CHECK_THROWS_AS(t30.at(31), InsufficientTable);
}

TEST_CASE("table agrees with hurwitz") {
  const auto t = build_table(20000, 2);
  for (i64 D = 0; D <= 20000; ++D) REQUIRE(t[D] == hurwitz(D));
  const auto big = build_table(1'000'000);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> d(0, 1'000'000);
  for (int i = 0; i < 1000; ++i) {
    const i64 D = d(rng);
    CHECK(big[D] == hurwitz(D));
  }
  CHECK(build_table(5000, 1) == build_table(5000, 4));
}

TEST_CASE("table csv round trip") {
  const auto t = build_table(200);
  std::stringstream s;
  write_table_csv(t, s);
  const std::string text = s.str();
  CHECK(text.rfind("D,twelveH\n0,-1\n", 0) == 0);
  CHECK(read_table_csv(s) == t);

  std::stringstream bad1("D,H\n0,-1\n");
  CHECK_THROWS(read_table_csv(bad1));
  std::stringstream bad2("D,twelveH\n0,-1\n2,0\n");
  CHECK_THROWS(read_table_csv(bad2));
  std::stringstream bad3("D,twelveH\n0,x\n");
  CHECK_THROWS(read_table_csv(bad3));
}
