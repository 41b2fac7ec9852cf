// Acceptance run: one pass/fail line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <iostream>
#include <sstream>

#include "chillag/catalog.hpp"
#include "chillag/character_table.hpp"
#include "chillag/pi_partial.hpp"
#include "chillag/sfca.hpp"
#include "chillag/table_file.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace chillag;

namespace {

// pinned tolerances
constexpr double kResidualTol = 1e-6;
constexpr std::uint64_t kSeed = 1;

using Rows = std::vector<std::vector<Cyclotomic>>;

struct Outcome {
  bool ok = true;
  std::vector<std::string> failures;
  int checks = 0;

  void expect(bool cond, const std::string &what) {
    ++checks;
    if (!cond) {
      ok = false;
      if (failures.size() < 5)
        failures.push_back(what);
    }
  }
};

struct GroupData {
  std::string name;
  PermGroup g;
  CharacterTable t;
  RationalTensor irr_alpha;
  std::size_t a_order = 1;
};

struct PiData {
  const GroupData *group;
  PrimeSet pi;
  std::optional<int> p; // set when pi is the complement of one prime
  IpiSet ipi;
  DecompositionMatrix dm;
  PimSet pims;
  std::size_t h_order = 1;
};

std::string describe(const std::string &name, const PrimeSet &pi) {
  std::string s = name + " pi={";
  bool first = true;
  for (int p : pi) {
    s += (first ? "" : ",") + std::to_string(p);
    first = false;
  }
  return s + "}";
}

Rational table_sum(const Rows &x) {
  Cyclotomic s;
  for (const auto &r : x)
    for (const auto &v : r)
      s += v;
  return s.is_rational() ? s.rational_value() : Rational(-1);
}

std::vector<Rational> regular(std::size_t n, std::size_t order) {
  std::vector<Rational> v(n, Rational(0));
  v[0] = Rational(static_cast<long long>(order));
  return v;
}

std::vector<Rational> as_rationals(const std::vector<std::int64_t> &xs) {
  std::vector<Rational> out;
  for (auto x : xs)
    out.emplace_back(static_cast<long long>(x));
  return out;
}

RationalTensor class_tensor(const PermGroup &g) {
  const auto ct = class_structure_constants(g);
  RationalTensor a(ct.n);
  for (int i = 0; i < ct.n; ++i)
    for (int j = 0; j < ct.n; ++j)
      for (int k = 0; k < ct.n; ++k)
        a(i, j, k) = ct(i, j, k);
  return a;
}

Rows central_characters(const CharacterTable &t) {
  Rows omega(t.size(), std::vector<Cyclotomic>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t c = 0; c < t.size(); ++c)
      omega[i][c] = t.chars[c][i] * Cyclotomic(Rational(t.class_sizes[i]) / t.chars[c][0].rational_value());
  return omega;
}

/// Exact trace identity: row sums of the verified table equal the traces of
/// the multiplication matrices, so both ways of computing s agree.
void trace_identity(Outcome &o, const std::string &what, const RationalTensor &alpha, const Rows &x) {
  try {
    const SFCA A = sfca_new(default_labels(alpha.n), alpha);
    const Table t = build_table_exact(A, x);
    const auto traces = row_sums_exact(A);
    bool ok = true;
    for (int i = 0; i < A.n; ++i) {
      Cyclotomic row;
      for (const auto &v : x[i])
        row += v;
      ok = ok && row == Cyclotomic(traces.rows[i]);
    }
    o.expect(ok && table_sum(x) == traces.total, what + ": row sums differ from traces");
    (void)t;
  } catch (const Error &e) {
    o.expect(false, what + ": " + e.what());
  }
}

void print(int id, const std::string &title, const Outcome &o, const std::string &detail) {
  std::cout << "criterion " << id << ": " << (o.ok ? "pass" : "fail") << "  " << title << " (" << o.checks
            << " checks" << (detail.empty() ? "" : ", " + detail) << ")\n";
  for (const auto &f : o.failures)
    std::cout << "    failed: " << f << "\n";
}

} // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<GroupData> groups;
  for (const auto &name : catalog_names()) {
    GroupData d{name, parse_group(name), {}, {}, 1};
    d.t = character_table(d.g, kSeed);
    d.irr_alpha = irr_structure_constants(d.t);
    const auto primes = prime_divisors(static_cast<std::int64_t>(d.g.order()));
    d.a_order = max_abelian_pi_subgroup_order(d.g, PrimeSet(primes.begin(), primes.end()));
    groups.push_back(std::move(d));
  }

  std::vector<PiData> pairs;
  int skipped = 0;
  for (const auto &d : groups) {
    const auto order = static_cast<std::int64_t>(d.g.order());
    const auto primes = prime_divisors(order);
    for (int mask = 1; mask < (1 << primes.size()); ++mask) {
      PrimeSet pi;
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (mask >> i & 1)
          pi.insert(primes[i]);
      if (!is_pi_separable(d.g, pi, std::max(order_cap(), d.g.order()))) {
        ++skipped;
        continue;
      }
      PiData p{&d, pi, std::nullopt, {}, {}, {}, 1};
      for (int q : primes)
        if (complement_primes(order, {q}) == pi && !pi.contains(q))
          p.p = q;
      p.ipi = irreducible_pi_partials(d.g, d.t, pi);
      p.dm = decomposition_matrix(d.t, p.ipi);
      p.pims = pims(d.t, p.ipi, p.dm);
      p.h_order = max_abelian_pi_subgroup_order(d.g, pi);
      pairs.push_back(std::move(p));
    }
  }
  const std::string pair_note = std::to_string(pairs.size()) + " separable (group, pi) pairs, " +
                                std::to_string(skipped) + " non-separable skipped";

  bool all = true;

  { // 1
    Outcome o;
    for (const auto &d : groups) {
      o.expect(check_orthogonality(d.t).ok(), d.name + ": orthogonality");
      const Rational s = table_sum(d.t.chars);
      o.expect(s > 0 && is_integral(s), d.name + ": s not a positive integer");
      o.expect(d.g.class_count() <= s && s <= static_cast<long long>(d.g.order()), d.name + ": n <= s <= |G|");
      o.expect(static_cast<long long>(d.a_order) <= s, d.name + ": |A| <= s");
    }
    for (const auto &[name, s] : std::vector<std::pair<std::string, int>>{{"S3", 5}, {"C2", 2}, {"Q8", 8}}) {
      const auto g = parse_group(name);
      const auto tables = oracle::rational_tables(class_sizes(g));
      Rational brute = -1;
      if (tables.size() == 1) {
        brute = 0;
        for (const auto &r : tables.front())
          for (int v : r)
            brute += v;
      }
      o.expect(brute == s, name + ": brute-force column-sum oracle");
      o.expect(table_sum(character_table(g).chars) == s, name + ": s spot value");
    }
    print(1, "ordinary tables: orthogonality, n <= s <= |G|, |A| <= s, s(S3)=5 s(C2)=2 s(Q8)=8", o,
          std::to_string(groups.size()) + " catalog groups");
    all = all && o.ok;
  }

  { // 2
    Outcome o;
    double worst = 0.0;
    for (const auto &d : groups) {
      const SFCA A = sfca_new(default_labels(d.irr_alpha.n, "chi"), d.irr_alpha);
      try {
        NumericOptions opt;
        opt.seed = kSeed;
        const Table num = build_table_numeric(A, opt);
        const auto m = match_columns(num, d.t.chars, kResidualTol);
        worst = std::max({worst, num.residual, m.max_deviation});
        o.expect(m.ok && num.residual < kResidualTol, d.name + ": numeric table differs from chartab");
      } catch (const Error &e) {
        o.expect(false, d.name + ": " + e.what());
      }
      try {
        build_table_exact(A, d.t.chars);
        o.expect(true, "");
      } catch (const Error &e) {
        o.expect(false, d.name + ": exact verification " + e.what());
      }
    }
    std::ostringstream w;
    w << "worst residual " << worst << ", tolerance " << kResidualTol;
    print(2, "oracle equivalence: numeric SFCA table on Irr constants matches chartab", o, w.str());
    all = all && o.ok;
  }

  { // 3
    Outcome o;
    for (const auto &d : groups) {
      trace_identity(o, d.name + " Irr", d.irr_alpha, d.t.chars);
      trace_identity(o, d.name + " class", class_tensor(d.g), central_characters(d.t));
    }
    for (const auto &p : pairs) {
      const auto name = describe(p.group->name, p.pi);
      trace_identity(o, name + " I_pi", pipartial_structure_constants(p.ipi), p.ipi.rows());
      trace_identity(o, name + " PIM", pim_structure_constants(p.pims, p.ipi.class_ids),
                     p.pims.restricted(p.ipi.class_ids));
    }
    print(3, "trace identity on Irr, class, I_pi and PIM bases", o, pair_note);
    all = all && o.ok;
  }

  { // 4
    Outcome o;
    auto certificate = [&](const std::string &what, const RationalTensor &alpha, const Rows &x,
                           const std::vector<Rational> &u, std::size_t order) -> std::optional<BoundsCertificate> {
      try {
        const SFCA A = sfca_new(default_labels(alpha.n), alpha);
        const auto c = bounds_certificate(A, build_table_exact(A, x), u, regular(alpha.n, order));
        o.expect(c.verdict, what + ": certificate");
        return c;
      } catch (const Error &e) {
        o.expect(false, what + ": " + e.what());
        return std::nullopt;
      }
    };
    for (const auto &d : groups) {
      const auto c = certificate(d.name + " ordinary", d.irr_alpha, d.t.chars, as_rationals(d.t.degrees()), d.g.order());
      if (c) {
        o.expect(static_cast<long long>(d.a_order) <= c->s, d.name + ": |A| <= s");
        o.expect(c->s <= static_cast<long long>(d.g.order()), d.name + ": s <= |G|");
        o.expect(c->upper == static_cast<long long>(d.g.order()), d.name + ": upper = |G|");
      }
    }
    for (const auto &p : pairs) {
      const auto name = describe(p.group->name, p.pi);
      const auto order = p.group->g.order();
      const auto pi_order = pi_part(static_cast<std::int64_t>(order), p.pi);
      const auto n = static_cast<long long>(p.ipi.size());
      const auto c = certificate(name + " I_pi", pipartial_structure_constants(p.ipi), p.ipi.rows(),
                                 as_rationals(p.pims.degrees), order);
      if (c) {
        o.expect(std::max<long long>(n, static_cast<long long>(p.h_order)) <= c->s, name + ": max(n,|H|) <= s");
        o.expect(c->s <= static_cast<long long>(pi_order), name + ": s <= |G|_pi");
        o.expect(c->upper <= static_cast<long long>(pi_order), name + ": |G|/min Phi(1) <= |G|_pi");
      }
      const auto q = certificate(name + " PIM", pim_structure_constants(p.pims, p.ipi.class_ids),
                                 p.pims.restricted(p.ipi.class_ids), as_rationals(p.ipi.degrees()), order);
      if (q) {
        o.expect(static_cast<long long>(p.group->a_order) <= q->s, name + ": PIM |A| <= s");
        o.expect(q->s <= static_cast<long long>(order), name + ": PIM s <= |G|");
      }
    }
    // tight spot checks
    for (const auto &p : pairs) {
      if (p.group->name != "S3" || !p.p)
        continue;
      const SFCA A = sfca_new(default_labels(static_cast<int>(p.ipi.size())), pipartial_structure_constants(p.ipi));
      const auto c = bounds_certificate(A, build_table_exact(A, p.ipi.rows()), as_rationals(p.pims.degrees),
                                        regular(p.ipi.size(), 6));
      if (*p.p == 3)
        o.expect(c.s == 2 && c.lower == 2 && c.upper == 2, "S3 p=3: s = 2 = |G|_3' with lower bound 2");
      if (*p.p == 2)
        o.expect(c.s == 3 && c.upper == 3, "S3 p=2: s = 3 = |G|_2'");
    }
    print(4, "bounds certificates (ordinary, I_pi, PIM) and S3 tight spot checks", o, pair_note);
    all = all && o.ok;
  }

  { // 5
    Outcome o;
    for (const auto &p : pairs) {
      const auto name = describe(p.group->name, p.pi);
      const auto &t = p.group->t;
      const auto order = static_cast<std::int64_t>(p.group->g.order());
      const std::size_t n = p.ipi.class_ids.size();
      o.expect(p.ipi.size() == n, name + ": |I_pi| = number of pi-classes");
      bool nonneg = true;
      for (const auto &row : p.dm.d)
        for (auto x : row)
          nonneg = nonneg && x >= 0;
      o.expect(nonneg, name + ": decomposition matrix nonnegative");
      // every restriction equals its decomposition
      bool decomposes = true;
      for (std::size_t chi = 0; chi < t.size(); ++chi)
        for (std::size_t j = 0; j < n; ++j) {
          Cyclotomic v;
          for (std::size_t phi = 0; phi < n; ++phi)
            v += Cyclotomic(static_cast<long long>(p.dm.d[chi][phi])) * p.ipi.irreducibles[phi].values[j];
          decomposes = decomposes && v == t.chars[chi][p.ipi.class_ids[j]];
        }
      o.expect(decomposes, name + ": chi* = sum d phi");
      const auto pi_prime = order / pi_part(order, p.pi);
      for (auto d : p.pims.degrees)
        o.expect(d >= pi_prime, name + ": Phi(1) >= |G|_pi'");
      // rho* = sum Phi(1) phi on the pi-classes
      bool rho_star = true;
      for (std::size_t j = 0; j < n; ++j) {
        Cyclotomic v;
        for (std::size_t phi = 0; phi < n; ++phi)
          v += Cyclotomic(static_cast<long long>(p.pims.degrees[phi])) * p.ipi.irreducibles[phi].values[j];
        rho_star = rho_star && v == Cyclotomic(j == 0 ? static_cast<long long>(order) : 0LL);
      }
      o.expect(rho_star, name + ": rho* = sum Phi(1) phi");
      if (p.p) {
        bool rho = true;
        for (int c = 0; c < p.group->g.class_count(); ++c) {
          Cyclotomic v;
          for (std::size_t phi = 0; phi < n; ++phi)
            v += Cyclotomic(static_cast<long long>(p.ipi.irreducibles[phi].degree)) * p.pims.pims[phi][c];
          rho = rho && v == Cyclotomic(c == 0 ? static_cast<long long>(order) : 0LL);
        }
        o.expect(rho, name + ": rho = sum phi(1) Phi");
      }
    }
    int oracle_cases = 0;
    for (const auto &[name, prime] : std::vector<std::pair<std::string, int>>{
             {"S3", 2}, {"S3", 3}, {"S4", 2}, {"S4", 3}, {"A4", 2}, {"SL(2,3)", 3}}) {
      for (const auto &p : pairs) {
        if (p.group->name != name || p.p != prime)
          continue;
        Rows restrictions;
        for (const auto &chi : p.group->t.chars) {
          std::vector<Cyclotomic> r;
          for (int c : p.ipi.class_ids)
            r.push_back(chi[c]);
          restrictions.push_back(r);
        }
        const auto found = oracle::brauer_bases(restrictions, p.ipi.class_ids.size());
        Rows got = p.ipi.rows();
        bool match = found.size() == 1;
        if (match) {
          Rows expected = found.front();
          std::sort(expected.begin(), expected.end(), row_precedes);
          std::sort(got.begin(), got.end(), row_precedes);
          match = expected == got;
        }
        o.expect(match, name + " p=" + std::to_string(prime) + ": Brauer table vs basis-search oracle");
        ++oracle_cases;
      }
    }
    o.expect(oracle_cases == 6, "all six Brauer oracle cases present");
    print(5, "pi-partial engine: |I_pi| = n, D nonnegative integral, Phi(1) >= |G|_pi', rho identities, Brauer oracle",
          o, pair_note);
    all = all && o.ok;
  }

  { // 6
    Outcome o;
    auto integral = [&](const std::string &what, const Rows &x) {
      const auto r = galois_column_test(x);
      o.expect(r.all_columns_integral(), what + ": column sums not all integers");
      o.expect(r.action_ok(), what + ": Galois row permutation");
    };
    for (const auto &d : groups)
      integral(d.name + " ordinary", d.t.chars);
    for (const auto &p : pairs) {
      const auto name = describe(p.group->name, p.pi);
      integral(name + " I_pi", p.ipi.rows());
      integral(name + " PIM", p.pims.restricted(p.ipi.class_ids));
    }
    print(6, "column sums integral and Galois row permutations for ordinary, I_pi and PIM tables", o, pair_note);
    all = all && o.ok;
  }

  { // 7
    Outcome o;
    std::string counts;
    for (const char *f : {"psl2_16_mod2.tbl", "psl2_27_mod3.tbl", "sz32_mod2.tbl", "psl2_16_mod2_pim.tbl"}) {
      try {
        const auto t = read_table_file(std::string(CHILLAG_FIXTURE_DIR) + "/" + f);
        const auto r = galois_column_test(t.rows);
        int irrational = 0;
        for (const auto &q : r.rationality)
          irrational += q.kind == RationalityKind::Irrational;
        o.expect(irrational >= 1, std::string(f) + ": no irrational column sum");
        counts += (counts.empty() ? "" : ", ") + std::string(f) + " " + std::to_string(irrational);
      } catch (const Error &e) {
        o.expect(false, std::string(f) + ": " + e.what());
      }
    }
    print(7, "counterexample fixtures have irrational column sums", o, "irrational columns: " + counts);
    all = all && o.ok;
  }

  { // 8
    Outcome o;
    for (const auto &p : pairs) {
      const auto name = describe(p.group->name, p.pi);
      try {
        const auto r = lemma_upper_bound_check(p.group->g, p.group->t, p.ipi, p.dm, p.pims);
        o.expect(r.ok(), name + ": lemma");
        o.expect(r.h_order == p.h_order, name + ": H is a maximal abelian pi-subgroup");
      } catch (const Error &e) {
        o.expect(false, name + ": " + e.what());
      }
    }
    print(8, "Phi_i a constituent of mu^G and Phi_i(1) <= |G:H|", o, pair_note);
    all = all && o.ok;
  }

  { // 9
    Outcome o;
    RationalTensor nc(2);
    nc(0, 0, 0) = nc(0, 1, 1) = nc(1, 0, 1) = nc(1, 1, 0) = 1;
    nc(0, 1, 0) = 2;
    try {
      sfca_new(default_labels(2), nc);
      o.expect(false, "non-commutative tensor accepted");
    } catch (const Error &e) {
      o.expect(e.kind() == ErrorKind::NotCommutative && std::string(e.what()).find("(b1, b2, b1)") != std::string::npos,
               std::string("non-commutative: ") + e.what());
    }
    RationalTensor na(3);
    for (int j = 0; j < 3; ++j)
      na(0, j, j) = na(j, 0, j) = 1;
    na(1, 1, 2) = na(1, 2, 0) = na(2, 1, 0) = na(2, 2, 2) = 1;
    try {
      sfca_new(default_labels(3), na);
      o.expect(false, "non-associative tensor accepted");
    } catch (const Error &e) {
      o.expect(e.kind() == ErrorKind::NotAssociative && std::string(e.what()).find("(b") != std::string::npos,
               std::string("non-associative: ") + e.what());
    }
    const char *argv[] = {"chillag", "analyze", "A5", "--pi", "2"};
    std::ostringstream out, err;
    const int code = cli::run_cli(5, argv, out, err);
    o.expect(code == 3, "analyze A5 --pi 2 exit code " + std::to_string(code));
    o.expect((out.str() + err.str()).find("NotPiSeparable") != std::string::npos, "NotPiSeparable reported");
    print(9, "negative paths: NotCommutative, NotAssociative, analyze A5 --pi 2 exits 3", o,
          "exit code " + std::to_string(code));
    all = all && o.ok;
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "acceptance: " << (all ? "pass" : "fail") << " (" << secs << " s)\n";
  return all ? 0 : 1;
}
