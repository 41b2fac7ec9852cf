#pragma once

// Builds the JSON verification reports behind the command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chillag/catalog.hpp"
#include "chillag/character_table.hpp"
#include "chillag/pi_partial.hpp"
#include "chillag/sfca.hpp"
#include "chillag/table_file.hpp"

namespace chillag::report {

using nlohmann::ordered_json;

inline const char *verdict(bool ok) { return ok ? "pass" : "fail"; }
inline constexpr const char *kNotApplicable = "n/a";

struct Settings {
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
};

inline ordered_json to_json(const std::vector<Cyclotomic> &row) {
  ordered_json out = ordered_json::array();
  for (const auto &v : row)
    out.push_back(to_string(v));
  return out;
}

inline ordered_json to_json(const std::vector<Rational> &xs) {
  ordered_json out = ordered_json::array();
  for (const auto &v : xs)
    out.push_back(to_string(v));
  return out;
}

inline ordered_json error_json(const Error &e) { return {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}; }

/// Input problems exit with 3; anything else raised during analysis is a
/// failed verdict.
inline bool is_input_error(ErrorKind k) {
  switch (k) {
  case ErrorKind::ParseError:
  case ErrorKind::ShapeMismatch:
  case ErrorKind::UnknownGroup:
  case ErrorKind::CapExceeded:
  case ErrorKind::InvalidPermutation:
  case ErrorKind::NotPiSeparable:
    return true;
  default:
    return false;
  }
}

inline ordered_json column_report(const std::vector<std::vector<Cyclotomic>> &rows) {
  const auto rep = galois_column_test(rows);
  ordered_json cols = ordered_json::array();
  for (std::size_t c = 0; c < rep.column_sums.size(); ++c)
    cols.push_back({{"value", to_string(rep.column_sums[c])},
                    {"rationality", std::string(to_string(rep.rationality[c].kind))}});
  ordered_json galois = {{"verdict", verdict(rep.action_ok())},
                         {"automorphisms", rep.sigmas.size()},
                         {"witness", nullptr}};
  if (rep.violation)
    galois["witness"] = {{"row", rep.violation->row + 1},
                         {"column", rep.violation->column + 1},
                         {"k", rep.violation->sigma.k},
                         {"order", rep.violation->sigma.order}};
  std::size_t irrational = 0;
  for (const auto &r : rep.rationality)
    irrational += r.kind == RationalityKind::Irrational;
  return {{"column_sums", cols},
          {"irrational_columns", irrational},
          {"all_integral", rep.all_columns_integral()},
          {"galois", galois}};
}

struct BoundClaim {
  std::string claim;
  Rational lhs, rhs;
};

/// Everything reported for one algebra with a known exact table: table sum,
/// trace identity, exact and numeric reconstruction, the bound certificate
/// for (u, v), the extra bound claims, and the Galois column test.
inline ordered_json table_section(const std::string &label_prefix, const RationalTensor &alpha,
                                  const std::vector<std::vector<Cyclotomic>> &rows, const std::vector<Rational> &u,
                                  const std::vector<Rational> &v, const std::vector<BoundClaim> &claims,
                                  const Settings &settings, bool integrality_applies, bool &all_pass) {
  ordered_json out;
  const SFCA A = sfca_new(default_labels(alpha.n, label_prefix), alpha);
  ordered_json table = ordered_json::array();
  for (const auto &row : rows)
    table.push_back(to_json(row));
  out["rows"] = table;

  const auto sums = row_sums_exact(A);
  out["s"] = to_string(sums.total);
  out["row_sums"] = to_json(sums.rows);

  bool exact_ok = true;
  std::optional<Table> exact;
  try {
    exact = build_table_exact(A, rows);
  } catch (const Error &e) {
    exact_ok = false;
    out["exact_error"] = error_json(e);
  }
  out["exact_verification"] = verdict(exact_ok);
  const bool trace_ok = exact && trace_consistency(A, *exact).ok;
  out["trace_identity"] = verdict(trace_ok);

  ordered_json recon;
  bool recon_ok = false;
  try {
    NumericOptions opt;
    opt.seed = settings.seed;
    const Table num = build_table_numeric(A, opt);
    const auto match = match_columns(num, rows, settings.tolerance);
    recon_ok = match.ok && num.residual < settings.tolerance;
    recon = {{"verdict", verdict(recon_ok)}, {"residual", num.residual}, {"max_deviation", match.max_deviation}};
  } catch (const Error &e) {
    recon = {{"verdict", verdict(false)}, {"error", error_json(e)}};
  }
  out["reconstruction"] = recon;

  bool cert_ok = false;
  try {
    if (!exact)
      throw Error(ErrorKind::RelationViolated, "no verified table");
    const auto c = bounds_certificate(A, *exact, u, v);
    cert_ok = c.verdict;
    out["certificate"] = {{"u", to_json(c.u)},         {"v", to_json(c.v)},
                          {"u_min", to_string(c.u_min)}, {"u_max", to_string(c.u_max)},
                          {"v_sum", to_string(c.v_sum)}, {"lower", to_string(c.lower)},
                          {"upper", to_string(c.upper)}, {"s", to_string(c.s)},
                          {"verdict", verdict(c.verdict)}};
  } catch (const Error &e) {
    out["certificate"] = {{"verdict", verdict(false)}, {"error", error_json(e)}};
  }

  ordered_json bounds = ordered_json::array();
  bool bounds_ok = true;
  for (const auto &b : claims) {
    const bool ok = b.lhs <= b.rhs;
    bounds_ok = bounds_ok && ok;
    bounds.push_back({{"claim", b.claim}, {"lhs", to_string(b.lhs)}, {"rhs", to_string(b.rhs)}, {"verdict", verdict(ok)}});
  }
  out["bounds"] = bounds;

  const auto cols = column_report(rows);
  out["columns"] = cols;
  const bool integral = cols["all_integral"].get<bool>();
  const bool galois_ok = cols["galois"]["verdict"] == "pass";
  out["column_integrality"] = integrality_applies ? verdict(integral) : kNotApplicable;

  all_pass = all_pass && exact_ok && trace_ok && recon_ok && cert_ok && bounds_ok && galois_ok &&
             (!integrality_applies || integral);
  return out;
}

inline std::vector<Rational> regular_vector(std::size_t n, std::size_t order) {
  std::vector<Rational> v(n);
  v[0] = static_cast<long long>(order);
  return v;
}

inline std::string format_primes(const PrimeSet &pi) {
  std::string out;
  for (int p : pi)
    out += (out.empty() ? "" : ",") + std::to_string(p);
  return out;
}

struct PiRequest {
  PrimeSet pi;
  std::optional<int> p; // set when given as --p, pi = p'
};

struct AnalyzeResult {
  ordered_json json;
  int exit_code = 0;
};

inline ordered_json group_json(const std::string &name, const PermGroup &g, std::size_t max_abelian) {
  return {{"name", name},
          {"order", g.order()},
          {"classes", g.class_count()},
          {"exponent", g.exponent()},
          {"max_abelian_order", max_abelian}};
}

/// The pi section: I_pi, decomposition matrix, PIMs, both bound chains,
/// lemma checks and Galois checks.
inline ordered_json pi_section(const PermGroup &g, const CharacterTable &t, const RationalTensor &irr_alpha,
                               const PiRequest &req, const Settings &settings, bool &all_pass) {
  ordered_json out;
  out["primes"] = req.pi;
  out["mode"] = req.p ? "p" : "pi";
  out["p"] = req.p ? ordered_json(*req.p) : ordered_json(nullptr);
  out["status"] = "ok";
  out["error"] = nullptr;

  const IpiSet ipi = irreducible_pi_partials(g, t, req.pi);
  const auto dm = decomposition_matrix(t, ipi);
  const auto P = pims(t, ipi, dm);
  const std::size_t n = ipi.size();
  const auto order = g.order();
  const auto pi_order = pi_part(static_cast<std::int64_t>(order), req.pi);
  const auto pi_prime_order = static_cast<std::int64_t>(order) / pi_order;
  const auto h_order = max_abelian_pi_subgroup_order(g, req.pi);
  const auto primes = prime_divisors(order);
  const auto a_order = max_abelian_pi_subgroup_order(g, PrimeSet(primes.begin(), primes.end()));

  ordered_json classes = ordered_json::array();
  for (int c : ipi.class_ids)
    classes.push_back(c + 1);
  out["pi_classes"] = classes;
  out["max_abelian_pi_order"] = h_order;

  ordered_json d = ordered_json::array();
  for (const auto &row : dm.d)
    d.push_back(row);
  out["decomposition"] = d;
  out["pim_degrees"] = P.degrees;

  bool degree_ok = true;
  for (auto deg : P.degrees)
    degree_ok = degree_ok && deg >= pi_prime_order;
  out["pim_degree_lower_bound"] = {{"bound", pi_prime_order}, {"verdict", verdict(degree_ok)}};

  const auto alpha = pipartial_structure_constants(ipi);
  const bool preimage_ok = !check_preimage_formula(ipi, dm, irr_alpha, alpha).has_value();
  out["preimage_crosscheck"] = verdict(preimage_ok);

  std::vector<Rational> u_pim, u_phi;
  for (auto x : P.degrees)
    u_pim.push_back(x);
  for (auto x : ipi.degrees())
    u_phi.push_back(x);
  const auto sums = row_sums_exact(sfca_new(default_labels(alpha.n, "phi"), alpha));
  const Rational s_ipi = sums.total;
  std::vector<BoundClaim> ipi_claims{
      {"n <= s", Rational(static_cast<long long>(n)), s_ipi},
      {"|H| <= s", Rational(static_cast<long long>(h_order)), s_ipi},
      {"s <= |G|_pi", s_ipi, Rational(pi_order)},
      {"|H| <= |G|/max Phi(1)", Rational(static_cast<long long>(h_order)),
       Rational(static_cast<long long>(order)) / *std::max_element(u_pim.begin(), u_pim.end())},
      {"|G|/min Phi(1) <= |G|_pi",
       Rational(static_cast<long long>(order)) / *std::min_element(u_pim.begin(), u_pim.end()), Rational(pi_order)},
  };
  const bool brauer_case = req.p.has_value();
  out["ipi"] = table_section("phi", alpha, ipi.rows(), u_pim, regular_vector(n, order), ipi_claims, settings, true,
                             all_pass);

  const auto pim_alpha = pim_structure_constants(P, ipi.class_ids);
  const auto pim_rows = P.restricted(ipi.class_ids);
  const Rational s_pim = row_sums_exact(sfca_new(default_labels(pim_alpha.n, "Phi"), pim_alpha)).total;
  std::vector<BoundClaim> pim_claims{
      {"|A| <= s", Rational(static_cast<long long>(a_order)), s_pim},
      {"s <= |G|", s_pim, Rational(static_cast<long long>(order))},
      {"|A| <= |G|/max phi(1)", Rational(static_cast<long long>(a_order)),
       Rational(static_cast<long long>(order)) / *std::max_element(u_phi.begin(), u_phi.end())},
  };
  out["pim"] = table_section("Phi", pim_alpha, pim_rows, u_phi, regular_vector(n, order), pim_claims, settings, true,
                             all_pass);
  out["brauer_case"] = brauer_case;

  ordered_json lemma;
  bool lemma_ok = false;
  try {
    const auto rep = lemma_upper_bound_check(g, t, ipi, dm, P);
    lemma_ok = rep.ok();
    ordered_json entries = ordered_json::array();
    for (const auto &e : rep.entries)
      entries.push_back({{"phi", e.index + 1},
                         {"mu", e.mu + 1},
                         {"multiplicity", e.multiplicity},
                         {"pim_degree", e.pim_degree},
                         {"h_index", e.bound},
                         {"constituent", verdict(e.constituent)},
                         {"within_bound", verdict(e.within_bound)}});
    lemma = {{"h_order", rep.h_order}, {"verdict", verdict(lemma_ok)}, {"entries", entries}};
  } catch (const Error &e) {
    lemma = {{"verdict", verdict(false)}, {"error", error_json(e)}};
  }
  out["lemma"] = lemma;

  bool action_ok = true;
  try {
    for (const auto &sigma : galois_group(table_conductor(ipi.rows())))
      galois_action_on_ipi(ipi, sigma);
  } catch (const Error &) {
    action_ok = false;
  }
  out["galois_action_on_ipi"] = verdict(action_ok);
  all_pass = all_pass && degree_ok && preimage_ok && lemma_ok && action_ok;
  return out;
}

/// Full report for one group. Errors inside the pi section are recorded there;
/// group-level input errors propagate.
inline AnalyzeResult analyze_group(const std::string &name, const std::optional<PiRequest> &req,
                                   const Settings &settings) {
  const PermGroup g = parse_group(name);
  const auto primes = prime_divisors(g.order());
  const PrimeSet all(primes.begin(), primes.end());
  const auto a_order = max_abelian_pi_subgroup_order(g, all);

  AnalyzeResult res;
  bool all_pass = true;
  ordered_json out;
  out["group"] = group_json(name, g, a_order);

  const CharacterTable t = character_table(g, settings.seed);
  const auto orth = check_orthogonality(t);
  ordered_json ord;
  ord["class_orders"] = t.class_orders;
  ord["class_sizes"] = t.class_sizes;
  ord["orthogonality"] = verdict(orth.ok());
  all_pass = all_pass && orth.ok();

  const auto irr_alpha = irr_structure_constants(t);
  std::vector<Rational> u;
  for (auto d : t.degrees())
    u.push_back(d);
  const Rational s = row_sums_exact(sfca_new(default_labels(irr_alpha.n, "chi"), irr_alpha)).total;
  const Rational order(static_cast<long long>(g.order()));
  std::vector<BoundClaim> claims{
      {"n <= s", Rational(static_cast<long long>(t.size())), s},
      {"|A| <= s", Rational(static_cast<long long>(a_order)), s},
      {"s <= |G|", s, order},
      {"|A| <= |G|/max chi(1)", Rational(static_cast<long long>(a_order)),
       order / *std::max_element(u.begin(), u.end())},
  };
  ord.update(table_section("chi", irr_alpha, t.chars, u, regular_vector(t.size(), g.order()), claims, settings, true,
                           all_pass));
  out["ordinary"] = ord;

  if (!req) {
    out["pi"] = {{"status", kNotApplicable}};
  } else {
    try {
      out["pi"] = pi_section(g, t, irr_alpha, *req, settings, all_pass);
    } catch (const Error &e) {
      out["pi"] = {{"primes", req->pi}, {"status", "error"}, {"error", error_json(e)}};
      all_pass = false;
      if (is_input_error(e.kind()))
        res.exit_code = 3;
    }
  }
  out["verdict"] = verdict(all_pass);
  if (res.exit_code == 0 && !all_pass)
    res.exit_code = 2;
  res.json = std::move(out);
  return res;
}

/// Numeric reconstruction of the ordinary table and of the central-character
/// table from the Irr and class-algebra tensors, matched against chartab.
inline AnalyzeResult crosscheck_group(const std::string &name, const Settings &settings) {
  const PermGroup g = parse_group(name);
  const CharacterTable t = character_table(g, settings.seed);
  NumericOptions opt;
  opt.seed = settings.seed;
  AnalyzeResult res;
  ordered_json out;
  out["group"] = {{"name", name}, {"order", g.order()}, {"classes", g.class_count()}};

  auto run = [&](const char *prefix, const RationalTensor &alpha, const std::vector<std::vector<Cyclotomic>> &rows) {
    const SFCA A = sfca_new(default_labels(alpha.n, prefix), alpha);
    const Table num = build_table_numeric(A, opt);
    const auto match = match_columns(num, rows, settings.tolerance);
    const bool ok = match.ok && num.residual < settings.tolerance;
    return std::pair{ok, ordered_json{{"verdict", verdict(ok)},
                                      {"residual", num.residual},
                                      {"max_deviation", match.max_deviation}}};
  };

  const auto [irr_ok, irr_json] = run("chi", irr_structure_constants(t), t.chars);
  out["irr"] = irr_json;

  const auto ct = class_structure_constants(g);
  RationalTensor ca(ct.n);
  for (int i = 0; i < ct.n; ++i)
    for (int j = 0; j < ct.n; ++j)
      for (int k = 0; k < ct.n; ++k)
        ca(i, j, k) = ct(i, j, k);
  // omega_chi(K_i) = |K_i| chi(g_i) / chi(1); rows are classes, columns characters
  std::vector<std::vector<Cyclotomic>> omega(t.size(), std::vector<Cyclotomic>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t c = 0; c < t.size(); ++c)
      omega[i][c] = t.chars[c][i] * Cyclotomic(Rational(t.class_sizes[i]) / t.chars[c][0].rational_value());
  const auto [class_ok, class_json] = run("K", ca, omega);
  out["class_algebra"] = class_json;

  const bool ok = irr_ok && class_ok;
  out["verdict"] = verdict(ok);
  if (!ok)
    out["error"] = {{"kind", "MismatchBeyondTolerance"},
                    {"message", "numeric table differs from the exact table beyond tolerance"}};
  res.exit_code = ok ? 0 : 2;
  res.json = std::move(out);
  return res;
}

inline ordered_json table_file_summary(const TableFile &t) {
  ordered_json pi = ordered_json::array();
  for (int p : t.pi)
    pi.push_back(p);
  CyclotomicAccumulator total(1);
  for (const auto &row : t.rows)
    for (const auto &v : row)
      total.add(v);
  return {{"name", t.name},
          {"kind", std::string(to_string(t.kind))},
          {"order", t.group_order},
          {"prime", t.prime ? ordered_json(*t.prime) : ordered_json(nullptr)},
          {"pi", pi},
          {"classes", t.classes},
          {"class_orders", t.class_orders},
          {"provenance", t.comments},
          {"s", to_string(total.value())}};
}

/// Column sums with rationality tags. Integrality is a theorem only for
/// ordinary tables here: modular tables in files carry no separability
/// guarantee.
inline AnalyzeResult columns_report(const TableFile &t) {
  AnalyzeResult res;
  ordered_json out;
  out["table"] = table_file_summary(t);
  auto cols = column_report(t.rows);
  const bool applies = t.kind == TableKind::Ordinary;
  const bool integral = cols["all_integral"].get<bool>();
  out["columns"] = cols;
  out["column_integrality"] = applies ? verdict(integral) : kNotApplicable;
  out["verdict"] = applies ? verdict(integral) : kNotApplicable;
  res.exit_code = applies && !integral ? 2 : 0;
  res.json = std::move(out);
  return res;
}

} // namespace chillag::report
