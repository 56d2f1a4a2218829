#pragma once

// Truncated Fourier expansions sum c(n/M) e(n tau / M) on the grid (1/M)Z.
//
// A series knows every coefficient with exponent n/M < B (its precision);
// indices that are not stored below the precision are zero. Only
// nonnegative exponents are represented.

#include "hcl/arith.hpp"
#include "hcl/hurwitz.hpp"
#include "hcl/rational.hpp"

#include "json.hpp"

#include <map>

namespace hcl {

class QSeries {
 public:
  using Terms = std::map<i64, Rational>;

  // Zero coefficients are dropped; indices must satisfy 0 <= n < B*M.
  QSeries(i64 grid_denominator, Rational precision, Terms terms = {});

  // The constant series 1 on the integral grid.
  static QSeries one(Rational precision);

  i64 grid_denominator() const { return grid_; }
  const Rational& precision() const { return precision_; }
  const Terms& terms() const { return terms_; }

  // First index not covered by the precision: ceil(B*M).
  i64 index_bound() const;
  bool known(i64 index) const { return index >= 0 && index < index_bound(); }

  // Coefficient at index n (exponent n/M); throws std::out_of_range above precision.
  Rational coefficient(i64 index) const;
  // Coefficient at a rational exponent; zero off the grid.
  Rational coefficient_at(const Rational& exponent) const;

  bool is_zero() const { return terms_.empty(); }

  QSeries operator+(const QSeries& other) const;

  // Same exponents and coefficients after aligning grids; precision must agree.
  friend bool operator==(const QSeries& x, const QSeries& y);

 private:
  i64 grid_;
  Rational precision_;
  Terms terms_;
};

// Reduction of a QSeries modulo a prime ell > 3.
class ModLSeries {
 public:
  using Terms = std::map<i64, i64>;

  ModLSeries(i64 ell, i64 grid_denominator, Rational precision, Terms terms);

  i64 ell() const { return ell_; }
  i64 grid_denominator() const { return grid_; }
  const Rational& precision() const { return precision_; }
  const Terms& terms() const { return terms_; }
  i64 coefficient(i64 index) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  i64 ell_;
  i64 grid_;
  Rational precision_;
  Terms terms_;
};

// sum_{n = beta (mod a)} e(n^2 tau / a), on grid a.
QSeries theta_series(i64 a, i64 beta, const Rational& precision);

// sum_{D < B} H(D) e(D tau).
QSeries eisenstein_hol(const Rational& precision, const HurwitzTable& table);

// Keeps exponents s in aZ + b and sends them to s/a. Output grid M*a,
// precision B/a.
QSeries u_operator(const QSeries& series, i64 a, i64 b);

// sum_{beta^2 = b (mod a)} theta_{a, beta}.
QSeries u_theta_decomposition(i64 a, i64 b, const Rational& precision);

// Cauchy product on the lcm grid; precision is the smaller of the two.
QSeries multiply(const QSeries& x, const QSeries& y);

ModLSeries reduce_mod(const QSeries& x, i64 ell);

// {"M": int, "B": "p/q", "coeffs": [[index, "num/den"], ...]}
nlohmann::ordered_json to_json(const QSeries& series);
QSeries qseries_from_json(const nlohmann::json& j);

}  // namespace hcl
