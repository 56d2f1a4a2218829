#include "hcl/qseries.hpp"

#include <numeric>
#include <stdexcept>

namespace hcl {

namespace {

i64 ceil_to_i64(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt c = num / den;
  if (num % den != 0 && num > 0) c += 1;
  return c.convert_to<i64>();
}

void require_prime_ell(i64 ell) {
  if (ell <= 3 || !is_prime(ell)) {
    throw std::invalid_argument("modulus must be a prime > 3, got " + std::to_string(ell));
  }
}

}  // namespace

QSeries::QSeries(i64 grid_denominator, Rational precision, Terms terms)
    : grid_(grid_denominator), precision_(std::move(precision)) {
  if (grid_ <= 0) throw std::invalid_argument("QSeries: grid denominator must be positive");
  if (precision_ <= 0) throw std::invalid_argument("QSeries: precision must be positive");
  const i64 bound = index_bound();
  for (auto& [n, c] : terms) {
    if (n < 0 || n >= bound) {
      throw std::invalid_argument("QSeries: index " + std::to_string(n) +
                                  " outside [0, " + std::to_string(bound) + ")");
    }
    if (c != 0) terms_.emplace(n, std::move(c));
  }
}

QSeries QSeries::one(Rational precision) { return QSeries(1, std::move(precision), {{0, Rational(1)}}); }

i64 QSeries::index_bound() const { return ceil_to_i64(precision_ * grid_); }

Rational QSeries::coefficient(i64 index) const {
  if (!known(index)) {
    throw std::out_of_range("QSeries: index " + std::to_string(index) + " beyond precision");
  }
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational QSeries::coefficient_at(const Rational& exponent) const {
  const Rational scaled = exponent * grid_;
  if (boost::multiprecision::denominator(scaled) != 1) return Rational(0);
  return coefficient(boost::multiprecision::numerator(scaled).convert_to<i64>());
}

QSeries QSeries::operator+(const QSeries& other) const {
  const i64 grid = std::lcm(grid_, other.grid_);
  const Rational precision = std::min(precision_, other.precision_);
  const i64 bound = ceil_to_i64(precision * grid);
  Terms sum;
  for (const auto* s : {this, &other}) {
    const i64 scale = grid / s->grid_;
    for (const auto& [n, c] : s->terms_) {
      if (n * scale < bound) sum[n * scale] += c;
    }
  }
  return QSeries(grid, precision, std::move(sum));
}

bool operator==(const QSeries& x, const QSeries& y) {
  if (x.precision_ != y.precision_) return false;
  const i64 grid = std::lcm(x.grid_, y.grid_);
  const i64 sx = grid / x.grid_, sy = grid / y.grid_;
  if (x.terms_.size() != y.terms_.size()) return false;
  auto it = y.terms_.begin();
  for (const auto& [n, c] : x.terms_) {
    if (n * sx != it->first * sy || c != it->second) return false;
    ++it;
  }
  return true;
}

ModLSeries::ModLSeries(i64 ell, i64 grid_denominator, Rational precision, Terms terms)
    : ell_(ell), grid_(grid_denominator), precision_(std::move(precision)) {
  require_prime_ell(ell_);
  for (auto [n, c] : terms) {
    c = mod(c, ell_);
    if (c != 0) terms_.emplace(n, c);
  }
}

i64 ModLSeries::coefficient(i64 index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? 0 : it->second;
}

QSeries theta_series(i64 a, i64 beta, const Rational& precision) {
  if (a <= 0) throw std::invalid_argument("theta_series: a must be positive");
  QSeries::Terms terms;
  // n^2 / a < B  <=>  n^2 < a B
  const Rational limit = precision * a;
  i64 reach = 0;
  while (Rational((reach + 1) * (reach + 1)) < limit) ++reach;
  for (i64 n = -reach + mod(beta + reach, a); n <= reach; n += a) terms[n * n] += 1;
  return QSeries(a, precision, std::move(terms));
}

QSeries eisenstein_hol(const Rational& precision, const HurwitzTable& table) {
  const i64 bound = ceil_to_i64(precision);
  if (bound - 1 > table.n_max()) throw InsufficientTable(bound - 1, table.n_max());
  QSeries::Terms terms;
  for (i64 D = 0; D < bound; ++D) {
    const i64 v = table[D].twelve_h;
    if (v != 0) terms.emplace(D, Rational(v, 12));
  }
  return QSeries(1, precision, std::move(terms));
}

QSeries u_operator(const QSeries& series, i64 a, i64 b) {
  if (a <= 0) throw std::invalid_argument("u_operator: a must be positive");
  const i64 M = series.grid_denominator();
  // Exponent n/M lies in aZ + b  <=>  n = b M (mod a M).
  const i64 modulus = checked_mul(a, M);
  const i64 residue = mod(checked_mul(mod(b, a), M), modulus);
  QSeries::Terms out;
  for (const auto& [n, c] : series.terms()) {
    if (mod(n, modulus) == residue) out.emplace(n, c);
  }
  return QSeries(modulus, series.precision() / a, std::move(out));
}

QSeries u_theta_decomposition(i64 a, i64 b, const Rational& precision) {
  QSeries::Terms zero;
  QSeries sum(a, precision, zero);
  for (i64 beta : sqrt_mod(b, a)) sum = sum + theta_series(a, beta, precision);
  return sum;
}

QSeries multiply(const QSeries& x, const QSeries& y) {
  const i64 grid = std::lcm(x.grid_denominator(), y.grid_denominator());
  const i64 sx = grid / x.grid_denominator();
  const i64 sy = grid / y.grid_denominator();
  const Rational precision = std::min(x.precision(), y.precision());
  const i64 bound = ceil_to_i64(precision * grid);
  QSeries::Terms out;
  for (const auto& [i, ci] : x.terms()) {
    const i64 base = i * sx;
    if (base >= bound) break;
    for (const auto& [j, cj] : y.terms()) {
      const i64 idx = base + j * sy;
      if (idx >= bound) break;
      out[idx] += ci * cj;
    }
  }
  return QSeries(grid, precision, std::move(out));
}

ModLSeries reduce_mod(const QSeries& x, i64 ell) {
  require_prime_ell(ell);
  ModLSeries::Terms terms;
  for (const auto& [n, c] : x.terms()) terms.emplace(n, residue_mod(c, ell));
  return ModLSeries(ell, x.grid_denominator(), x.precision(), std::move(terms));
}

nlohmann::ordered_json to_json(const QSeries& series) {
  nlohmann::ordered_json j;
  j["M"] = series.grid_denominator();
  j["B"] = to_fraction_string(series.precision());
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& [n, c] : series.terms()) {
    coeffs.push_back(nlohmann::ordered_json::array({n, to_fraction_string(c)}));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

QSeries qseries_from_json(const nlohmann::json& j) {
  QSeries::Terms terms;
  i64 last = -1;
  for (const auto& entry : j.at("coeffs")) {
    const i64 n = entry.at(0).get<i64>();
    if (n <= last) throw std::invalid_argument("QSeries JSON: indices must be ascending");
    last = n;
    terms.emplace(n, parse_fraction(entry.at(1).get<std::string>()));
  }
  return QSeries(j.at("M").get<i64>(), parse_fraction(j.at("B").get<std::string>()),
                 std::move(terms));
}

}  // namespace hcl
