#include "hcl/cli.hpp"

#include "hcl/congruence.hpp"
#include "hcl/dichotomy.hpp"
#include "hcl/holproj.hpp"
#include "hcl/hurwitz.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>

namespace hcl::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

struct Config {
  std::string table_path;
  Format format = Format::Json;
  unsigned jobs = 0;
};

// Command output: a JSON body, optionally with one array of flat objects
// that the CSV format prints as a table.
struct Result {
  json body;
  int code = kExitOk;
  std::string table_key;
  std::vector<std::string> columns;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr i64 kSafeInteger = i64{1} << 53;

json num(i64 v) {
  if (v > kSafeInteger || v < -kSafeInteger) return std::to_string(v);
  return v;
}

json frac(const Rational& q) { return to_fraction_string(q); }

std::string resolve_table_path(const Config& cfg) {
  if (!cfg.table_path.empty()) return cfg.table_path;
  if (const char* env = std::getenv("HCL_TABLE"); env && *env) return env;
  return "hurwitz_table.csv";
}

HurwitzTable obtain_table(const Config& cfg, i64 needed, std::ostream& err) {
  if (needed < 0) needed = 0;
  if (needed > kMaxTableSize) throw UsageError("table size above 10^8 is not supported");
  const std::string path = resolve_table_path(cfg);
  if (std::ifstream in(path); in) {
    try {
      auto t = read_table_csv(in);
      if (t.covers(needed)) return t;
      err << "warning: table cache " << path << " covers D <= " << t.n_max() << ", need "
          << needed << "; rebuilding\n";
    } catch (const std::exception& e) {
      err << "warning: ignoring table cache " << path << ": " << e.what() << "\n";
    }
  } else {
    err << "warning: no table cache at " << path << "; building D <= " << needed << "\n";
  }
  auto table = build_table(needed, cfg.jobs);
  std::ofstream o(path);
  try {
    if (!o) throw std::runtime_error("cannot open for writing");
    write_table_csv(table, o);
  } catch (const std::exception& e) {
    err << "warning: could not write table cache " << path << ": " << e.what() << "\n";
  }
  return table;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array()) {
    if (std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); })) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : " ") + scalar_text(x);
      out.emplace_back(prefix, s);
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render(const Result& r, Format format, std::ostream& out) {
  switch (format) {
    case Format::Json:
      out << r.body.dump(2) << "\n";
      return;
    case Format::Text: {
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(r.body, "", kv);
      for (const auto& [k, v] : kv) out << k << ": " << v << "\n";
      return;
    }
    case Format::Csv: {
      if (!r.table_key.empty()) {
        for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
        out << "\n";
        for (const auto& row : r.body.at(r.table_key)) {
          for (std::size_t i = 0; i < r.columns.size(); ++i) {
            out << (i ? "," : "") << csv_field(scalar_text(row.at(r.columns[i])));
          }
          out << "\n";
        }
        return;
      }
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(r.body, "", kv);
      out << "key,value\n";
      for (const auto& [k, v] : kv) out << csv_field(k) << "," << csv_field(v) << "\n";
      return;
    }
  }
}

void require_positive(i64 v, const char* name) {
  if (v <= 0) throw UsageError(std::string(name) + " must be positive");
}

void require_ell(i64 ell) {
  if (ell <= 3 || !is_prime(ell)) throw UsageError("--ell must be a prime > 3");
}

json certificate_json(const CongruenceCertificate& c) {
  json j = to_json(c);
  json bounds = json::array();
  for (const auto& e : ord_bound_report(c.progression.a, c.progression.b)) {
    bounds.push_back({{"p", e.prime}, {"ord", e.ord}, {"bound", e.bound}, {"within", e.within()}});
  }
  j["ord_bounds"] = std::move(bounds);
  return j;
}

Result cmd_table(const Config& cfg, i64 n_max, const std::string& out_path) {
  if (n_max < 0 || n_max > kMaxTableSize) throw UsageError("--n-max must lie in [0, 10^8]");
  const std::string path = out_path.empty() ? resolve_table_path(cfg) : out_path;
  const auto table = build_table(n_max, cfg.jobs);
  std::ofstream o(path);
  if (!o) throw std::ios_base::failure("cannot open " + path + " for writing");
  write_table_csv(table, o);
  o.close();
  if (!o) throw std::ios_base::failure("failed writing " + path);
  Result r;
  r.body = {{"path", path}, {"n_max", n_max}, {"rows", n_max + 1}};
  return r;
}

Result cmd_hurwitz(i64 D) {
  if (D < 0) throw UsageError("--d must be nonnegative");
  const auto h = hurwitz(D);
  Result r;
  r.body = {{"D", D}, {"twelve_h", h.twelve_h}, {"H", frac(h.value())}};
  if (D > 0 && is_discriminant_magnitude(D)) {
    const auto [d0, f] = fundamental_decomposition(D);
    r.body["fundamental_D"] = d0;
    r.body["f"] = f;
    r.body["formula_twelve_h"] = hurwitz_via_formula(d0, f).twelve_h;
  }
  return r;
}

Result cmd_verify(const Config& cfg, i64 ell, i64 a, i64 b, i64 n_max, std::ostream& err) {
  require_ell(ell);
  require_positive(a, "--a");
  const auto table = obtain_table(cfg, n_max, err);
  const auto v = verify_congruence(ell, a, b, n_max, table);
  const auto prog = ArithmeticProgression::make(a, b);
  Result r;
  r.body = {{"ell", ell},
            {"a", prog.a},
            {"b", prog.b},
            {"n_max", n_max},
            {"ok", v.ok},
            {"class", to_string(classify_progression(prog.a, prog.b))},
            {"values_checked", v.values_checked}};
  r.body["counterexample"] = v.first_counterexample ? json(*v.first_counterexample) : json(nullptr);
  if (v.first_counterexample) {
    r.body["counterexample_twelve_h"] = table[*v.first_counterexample].twelve_h;
  }
  r.code = v.ok ? kExitOk : kExitNegative;
  return r;
}

Result cmd_search(const Config& cfg, i64 ell, i64 a_max, i64 n_max, std::ostream& err) {
  require_ell(ell);
  require_positive(a_max, "--a-max");
  if (n_max < 100 * a_max) throw UsageError("--n-max must be at least 100 * --a-max");
  const auto table = obtain_table(cfg, n_max, err);
  json certs = json::array();
  for (const auto& c : search(ell, a_max, n_max, table, cfg.jobs)) certs.push_back(to_json(c));
  Result r;
  r.body = {{"ell", ell}, {"a_max", a_max}, {"n_max", n_max}, {"count", certs.size()},
            {"certificates", std::move(certs)}};
  r.table_key = "certificates";
  r.columns = {"ell", "a", "b", "n_max", "class", "maximal"};
  return r;
}

Result cmd_square_class(const Config& cfg, i64 ell, i64 a, i64 b, i64 u_max, i64 n_max,
                        std::optional<i64> m, std::optional<i64> p, std::ostream& err) {
  require_ell(ell);
  require_positive(a, "--a");
  const auto prog = ArithmeticProgression::make(a, b);
  Result r;
  r.body = {{"ell", ell}, {"a", prog.a}, {"b", prog.b}, {"n_max", n_max}, {"u_max", u_max}};
  if (m || p) {
    if (!m || !p) throw UsageError("--m and --p go together");
    r.body["m"] = *m;
    r.body["p"] = *p;
    r.body["u"] = square_class_witness(*m, prog.a, prog.b, *p);
    return r;
  }
  const auto table = obtain_table(cfg, n_max, err);
  const auto v = verify_congruence(ell, prog.a, prog.b, n_max, table);
  r.body["base_ok"] = v.ok;
  if (!v.ok) {
    r.body["counterexample"] = *v.first_counterexample;
    r.code = kExitNegative;
    return r;
  }
  const CongruenceCertificate cert{ell, prog, n_max, classify_progression(prog.a, prog.b),
                                   maximal_up_to(ell, prog.a, prog.b, n_max, table)};
  const auto sc = square_class_check(cert, u_max, n_max, table);
  r.body["ok"] = sc.ok;
  r.body["units_checked"] = sc.units_checked.size();
  json failures = json::array();
  for (const auto& [u, c] : sc.failures) failures.push_back({{"u", u}, {"counterexample", c}});
  r.body["failures"] = std::move(failures);
  r.body["certificate"] = certificate_json(cert);
  r.code = sc.ok ? kExitOk : kExitNegative;
  return r;
}

Result cmd_dichotomy(const Config& cfg, i64 ell, i64 a, i64 b, i64 n_max, long max_rows,
                     std::ostream& err) {
  require_ell(ell);
  require_positive(a, "--a");
  const auto table = obtain_table(cfg, n_max, err);
  Result r;
  try {
    const auto report = classify(ell, a, b, n_max, table, cfg.jobs);
    r.body = to_json(report, max_rows);
    r.code = report.verdict == DichotomyCase::Inconclusive ? kExitNegative : kExitOk;
  } catch (const DichotomyPrecondition& e) {
    const auto prog = ArithmeticProgression::make(a, b);
    r.body = {{"ell", ell}, {"a", prog.a}, {"b", prog.b}, {"n_max", n_max},
              {"case", "precondition_failed"}, {"reason", e.what()}};
    r.code = kExitNegative;
  }
  return r;
}

Result cmd_holproj(const Config& cfg, i64 a, i64 b, i64 beta, i64 n, bool with_table,
                   std::ostream& err) {
  require_positive(a, "--a");
  if (n < 0) throw UsageError("--n must be nonnegative");
  Result r;
  r.body = {{"a", a}, {"b", mod(b, a)}, {"beta", beta}, {"n", n}};
  json p = json::array();
  Rational corr(0);
  for (i64 bt : sqrt_mod(-b, a)) {
    const Rational plus = proj_theta_product(a, bt, beta, n);
    const Rational minus = proj_theta_product(a, bt, -beta, n);
    corr += plus + minus;
    p.push_back({{"beta_tilde", bt}, {"P_beta", frac(plus)}, {"P_minus_beta", frac(minus)}});
  }
  r.body["projections"] = std::move(p);
  r.body["correction"] = frac(corr / 16);
  const bool square = n > 0 && is_square(checked_mul(a, n));
  if (n > 0 && !square) {
    r.body["nonhol_coefficient"] = frac(nonhol_coefficient(a, b, beta, n));
    try {
      const auto dec = q_subset_decomposition(a, b, beta, n);
      json subsets = json::array();
      for (const auto& t : dec.terms) {
        subsets.push_back({{"subset", t.subset}, {"beta_tilde", t.beta_tilde},
                           {"a_Q", t.a_part}, {"inner_sum", t.inner_sum}});
      }
      r.body["q_subsets"] = std::move(subsets);
      r.body["q_total"] = frac(dec.total());
    } catch (const std::invalid_argument& e) {
      r.body["q_subsets"] = nullptr;
      r.body["q_subsets_reason"] = e.what();
    }
  } else {
    r.body["nonhol_coefficient"] = nullptr;
  }
  if (with_table) {
    const auto table = obtain_table(cfg, checked_mul(a, n + 1) - 1, err);
    const Rational hol = hol_product_coefficient(a, b, beta, n, table);
    r.body["hol_product_coefficient"] = frac(hol);
    r.body["exact_projection_coefficient"] = frac(hol + corr / 16);
  }
  return r;
}

Result cmd_subprogression(i64 a, i64 b, i64 beta) {
  require_positive(a, "--a");
  const auto w = subprogression_construct(a, b, beta);
  Result r;
  r.body = {{"a_tilde", w.a_tilde}, {"b_tilde", w.b_tilde}, {"beta", w.beta},
            {"base_modulus", w.base_modulus}, {"p_big", w.p_big}, {"a", w.a}, {"b", w.b},
            {"conditions_hold", witness_violations(w).empty()}};
  const auto pp = find_proposition_primes(w);
  json prop = {{"gcd_a_2beta", pp.gcd_a_2beta}, {"two_beta_is_gcd", pp.two_beta_is_gcd}};
  prop["p"] = pp.p ? json(*pp.p) : json(nullptr);
  prop["p_prime"] = pp.p_prime;
  prop["first_index"] = num(pp.first_index());
  prop["second_index"] = num(pp.second_index());
  for (const auto& [key, idx] : {std::pair{"first", pp.first_index()}, std::pair{"second", pp.second_index()}}) {
    const std::string k = key;
    if (is_square(checked_mul(w.a, idx))) {
      prop[k + "_coefficient"] = nullptr;
      continue;
    }
    const auto dec = q_subset_decomposition(w.a, w.b, w.beta, idx);
    prop[k + "_coefficient"] = frac(dec.total());
    json contributing = json::array();
    for (const auto* t : dec.contributing()) contributing.push_back(t->subset);
    prop[k + "_contributing_subsets"] = std::move(contributing);
  }
  r.body["proposition"] = std::move(prop);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hurwitz class number congruences"};
  app.name("hcl");
  app.require_subcommand(1);

  Config cfg;
  std::string format = "json";
  app.add_option("--format", format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--jobs", cfg.jobs, "worker threads, 0 = all");
  app.add_option("--table", cfg.table_path, "Hurwitz table cache (default $HCL_TABLE, then hurwitz_table.csv)");

  i64 ell = 0, a = 0, b = 0, n_max = 1'000'000, a_max = 0, u_max = 50, beta = 0, n = 0, D = 0;
  long max_rows = 20;
  std::string out_path;
  std::optional<i64> m, p;
  bool no_table = false;

  auto add_eab = [&](CLI::App* sub) {
    sub->add_option("--ell", ell, "prime > 3")->required();
    sub->add_option("--a", a, "modulus")->required();
    sub->add_option("--b", b, "residue")->required();
    sub->add_option("--n-max", n_max, "largest a n + b checked");
  };

  auto* table = app.add_subcommand("table", "build and write the Hurwitz table cache");
  table->add_option("--n-max", n_max, "largest D")->required();
  table->add_option("--out", out_path, "output path");

  auto* hw = app.add_subcommand("hurwitz", "H(D) for a single D");
  hw->add_option("--d", D, "D >= 0")->required();

  auto* verify = app.add_subcommand("verify", "check H(a n + b) = 0 (mod ell) up to n-max");
  add_eab(verify);

  auto* srch = app.add_subcommand("search", "find maximal congruences with a <= a-max");
  srch->add_option("--ell", ell, "prime > 3")->required();
  srch->add_option("--a-max", a_max, "largest modulus")->required();
  srch->add_option("--n-max", n_max, "largest value checked");

  auto* sq = app.add_subcommand("square-class", "check the congruence on a Z + b u^2");
  add_eab(sq);
  sq->add_option("--u-max", u_max, "largest u");
  sq->add_option("--m", m, "target residue for the Hensel witness");
  sq->add_option("--p", p, "odd prime for the Hensel witness");

  auto* dich = app.add_subcommand("dichotomy", "classify a congruence into the two cases");
  add_eab(dich);
  dich->add_option("--max-rows", max_rows, "evidence rows printed, -1 for all");

  auto* hp = app.add_subcommand("holproj", "projection coefficient sums at one n");
  hp->add_option("--a", a, "modulus")->required();
  hp->add_option("--b", b, "residue")->required();
  hp->add_option("--beta", beta, "beta with beta^2 = -b (mod a)")->required();
  hp->add_option("--n", n, "coefficient index")->required();
  hp->add_flag("--no-table", no_table, "skip the part that needs Hurwitz values");

  auto* sp = app.add_subcommand("subprogression", "refine a Z + b and pick the auxiliary primes");
  sp->add_option("--a", a, "modulus")->required();
  sp->add_option("--b", b, "residue")->required();
  sp->add_option("--beta", beta, "beta with beta^2 = -b (mod a)")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;

  try {
    Result r;
    if (table->parsed()) {
      r = cmd_table(cfg, n_max, out_path);
    } else if (hw->parsed()) {
      r = cmd_hurwitz(D);
    } else if (verify->parsed()) {
      r = cmd_verify(cfg, ell, a, b, n_max, err);
    } else if (srch->parsed()) {
      r = cmd_search(cfg, ell, a_max, n_max, err);
    } else if (sq->parsed()) {
      r = cmd_square_class(cfg, ell, a, b, u_max, n_max, m, p, err);
    } else if (dich->parsed()) {
      r = cmd_dichotomy(cfg, ell, a, b, n_max, max_rows, err);
    } else if (hp->parsed()) {
      r = cmd_holproj(cfg, a, b, beta, n, !no_table, err);
    } else if (sp->parsed()) {
      r = cmd_subprogression(a, b, beta);
    }
    render(r, cfg.format, out);
    return r.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace hcl::cli
