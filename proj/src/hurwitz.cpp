#include "hcl/hurwitz.hpp"

#include "hcl/parallel.hpp"

#include <atomic>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>

namespace hcl {

namespace {

// Weight (in twelfths) of the reduced form (a, b, c), b >= 0, together with
// its mirror (a, -b, c) when that one is reduced too.
int reduced_weight(i64 a, i64 b, i64 c) {
  if (b == 0) return a == c ? 6 : 12;
  if (a == b && a == c) return 4;
  if (a == b || a == c) return 12;
  return 24;
}

}  // namespace

InsufficientTable::InsufficientTable(i64 needed, i64 available)
    : std::out_of_range("Hurwitz table covers D <= " + std::to_string(available) +
                        " but D = " + std::to_string(needed) + " is required") {}

HurwitzValue hurwitz(i64 D) {
  if (D < 0) throw std::invalid_argument("hurwitz: D must be nonnegative");
  if (D == 0) return {-1};
  if (D % 4 == 1 || D % 4 == 2) return {0};
  i64 total = 0;
  // b = D (mod 2); for each b walk the divisors a of (b^2 + D)/4 with b <= a <= c.
  for (i64 b = D % 2; 3 * b * b <= D; b += 2) {
    const i64 k = (b * b + D) / 4;
    for (i64 a = std::max<i64>(b, 1); a * a <= k; ++a) {
      if (k % a != 0) continue;
      total += reduced_weight(a, b, k / a);
    }
  }
  return {total};
}

i64 class_number(i64 D) {
  if (!is_fundamental(D)) {
    throw std::invalid_argument("class_number: -" + std::to_string(D) +
                                " is not a fundamental discriminant");
  }
  i64 count = 0;
  for (i64 b = D % 2; 3 * b * b <= D; b += 2) {
    const i64 k = (b * b + D) / 4;
    for (i64 a = std::max<i64>(b, 1); a * a <= k; ++a) {
      if (k % a != 0) continue;
      const i64 c = k / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      count += (b == 0 || a == b || a == c) ? 1 : 2;
    }
  }
  return count;
}

HurwitzValue hurwitz_via_formula(i64 D, i64 f) {
  if (!is_fundamental(D)) {
    throw std::invalid_argument("hurwitz_via_formula: -" + std::to_string(D) +
                                " is not a fundamental discriminant");
  }
  if (f <= 0) throw std::invalid_argument("hurwitz_via_formula: f must be positive");
  i64 twelve_h = hurwitz(D).twelve_h;
  for (const auto& [p, e] : factorize(f).factors) {
    const i64 fp = ipow(p, e);
    const i64 local = sigma1(fp) - kronecker(-D, p) * sigma1(fp / p);
    twelve_h = checked_mul(twelve_h, local);
  }
  return {twelve_h};
}

HurwitzTable::HurwitzTable(std::vector<std::int32_t> twelve_h) : values_(std::move(twelve_h)) {
  if (values_.empty()) throw std::invalid_argument("HurwitzTable: empty table");
}

HurwitzValue HurwitzTable::at(i64 D) const {
  if (D < 0) throw std::invalid_argument("HurwitzTable: negative D");
  if (D > n_max()) throw InsufficientTable(D, n_max());
  return (*this)[D];
}

HurwitzTable build_table(i64 n_max, unsigned jobs) {
  if (n_max < 0 || n_max > kMaxTableSize) {
    throw std::invalid_argument("build_table: n_max must lie in [0, 10^8]");
  }
  std::vector<std::int32_t> values(static_cast<std::size_t>(n_max) + 1, 0);
  values[0] = -1;

  i64 a_max = 0;
  while (3 * (a_max + 1) * (a_max + 1) <= n_max) ++a_max;

  parallel_for(static_cast<std::size_t>(a_max), jobs, [&](std::size_t idx) {
    const i64 a = static_cast<i64>(idx) + 1;
    for (i64 b = 0; b <= a; ++b) {
      for (i64 c = a;; ++c) {
        const i64 D = 4 * a * c - b * b;
        if (D > n_max) break;
        std::atomic_ref<std::int32_t> slot(values[static_cast<std::size_t>(D)]);
        slot.fetch_add(reduced_weight(a, b, c), std::memory_order_relaxed);
      }
    }
  });
  return HurwitzTable(std::move(values));
}

void write_table_csv(const HurwitzTable& table, std::ostream& out) {
  out << "D,twelveH\n";
  const auto values = table.twelve_h();
  std::string line;
  for (std::size_t D = 0; D < values.size(); ++D) {
    line.clear();
    line += std::to_string(D);
    line += ',';
    line += std::to_string(values[D]);
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("failed writing Hurwitz table");
}

HurwitzTable read_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("Hurwitz table: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "D,twelveH") throw std::runtime_error("Hurwitz table: bad header '" + line + "'");

  std::vector<std::int32_t> values;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    i64 D = -1;
    std::int32_t v = 0;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(begin, begin + (comma == std::string::npos ? 0 : comma), D);
    auto r2 = std::from_chars(begin + comma + 1, end, v);
    if (comma == std::string::npos || r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r2.ptr != end) {
      throw std::runtime_error("Hurwitz table: malformed row '" + line + "'");
    }
    if (D != static_cast<i64>(values.size())) {
      throw std::runtime_error("Hurwitz table: expected row for D = " +
                               std::to_string(values.size()) + ", got " + std::to_string(D));
    }
    values.push_back(v);
  }
  if (values.empty()) throw std::runtime_error("Hurwitz table: no rows");
  return HurwitzTable(std::move(values));
}

}  // namespace hcl
