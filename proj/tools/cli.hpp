#pragma once

// Command-line front end: analyze, crosscheck, ingest, columns, catalog.
// Exit codes: 0 all verdicts pass, 2 a verdict fails, 3 input or parse error.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"

namespace chillag::cli {

using report::ordered_json;

namespace detail {

inline std::string join(const ordered_json &arr, const char *sep = ", ") {
  std::string out;
  for (const auto &v : arr) {
    if (!out.empty())
      out += sep;
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

inline std::string sci(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

inline void line(std::ostream &out, const std::string &indent, const std::string &label, const std::string &value) {
  out << indent << std::left << std::setw(28) << label << value << "\n";
}

inline std::string error_text(const ordered_json &e) { return e.value("message", std::string("error")); }

inline void render_columns(std::ostream &out, const std::string &in, const ordered_json &cols) {
  // short lists on one line, long or irrational ones one column per line
  std::string sums;
  bool compact = cols["column_sums"].size() <= 12;
  for (const auto &c : cols["column_sums"])
    compact = compact && c["value"].get<std::string>().size() <= 12;
  if (compact) {
    for (const auto &c : cols["column_sums"]) {
      if (!sums.empty())
        sums += ", ";
      sums += c["value"].get<std::string>() + " [" + c["rationality"].get<std::string>() + "]";
    }
    line(out, in, "column sums", sums);
  } else {
    line(out, in, "column sums", "");
    int j = 1;
    for (const auto &c : cols["column_sums"])
      line(out, in + "  ", "[" + std::to_string(j++) + "] " + c["rationality"].get<std::string>(),
           c["value"].get<std::string>());
  }
  const auto &g = cols["galois"];
  const int autos = g["automorphisms"].get<int>();
  std::string gal = g["verdict"].get<std::string>() + " (" + std::to_string(autos) +
                    (autos == 1 ? " automorphism)" : " automorphisms)");
  if (!g["witness"].is_null())
    gal += ", row " + g["witness"]["row"].dump() + " has no image under k=" + g["witness"]["k"].dump() +
           " (first mismatch in column " + g["witness"]["column"].dump() + ")";
  line(out, in, "galois row action", gal);
}

inline void render_section(std::ostream &out, const std::string &title, const std::string &prefix,
                           const ordered_json &sec) {
  const std::string in = "  ";
  out << title << "\n";
  int i = 1;
  for (const auto &row : sec["rows"])
    out << in << prefix << i++ << ": " << join(row) << "\n";
  line(out, in, "s", sec["s"].get<std::string>() + "  (row sums " + join(sec["row_sums"]) + ")");
  line(out, in, "exact verification", sec["exact_verification"].get<std::string>());
  line(out, in, "trace identity", sec["trace_identity"].get<std::string>());
  const auto &r = sec["reconstruction"];
  if (r.contains("residual"))
    line(out, in, "numeric reconstruction",
         r["verdict"].get<std::string>() + " (residual " + sci(r["residual"].get<double>()) + ", deviation " +
             sci(r["max_deviation"].get<double>()) + ")");
  else
    line(out, in, "numeric reconstruction", r["verdict"].get<std::string>() + " (" + error_text(r["error"]) + ")");
  const auto &c = sec["certificate"];
  if (c.contains("lower"))
    line(out, in, "bound certificate",
         c["verdict"].get<std::string>() + " (" + c["lower"].get<std::string>() + " <= s = " +
             c["s"].get<std::string>() + " <= " + c["upper"].get<std::string>() + ")");
  else
    line(out, in, "bound certificate", c["verdict"].get<std::string>() + " (" + error_text(c["error"]) + ")");
  for (const auto &b : sec["bounds"])
    line(out, in, b["claim"].get<std::string>(),
         b["verdict"].get<std::string>() + " (" + b["lhs"].get<std::string>() + " <= " + b["rhs"].get<std::string>() +
             ")");
  render_columns(out, in, sec["columns"]);
  line(out, in, "column integrality", sec["column_integrality"].get<std::string>());
}

inline void render_analyze(std::ostream &out, const ordered_json &rep) {
  const auto &g = rep["group"];
  if (rep.contains("error") && !rep.contains("ordinary")) {
    out << "group " << g["name"].get<std::string>() << "\n  error: " << error_text(rep["error"]) << "\n";
    return;
  }
  out << "group " << g["name"].get<std::string>() << "  order " << g["order"].dump() << "  classes "
      << g["classes"].dump() << "  exponent " << g["exponent"].dump() << "  |A| " << g["max_abelian_order"].dump()
      << "\n";
  const auto &ord = rep["ordinary"];
  render_section(out, "ordinary characters", "chi", ord);
  line(out, "  ", "orthogonality", ord["orthogonality"].get<std::string>());

  const auto &pi = rep["pi"];
  const std::string status = pi["status"].get<std::string>();
  if (status == report::kNotApplicable) {
    out << "pi section: n/a\n";
  } else if (status == "error") {
    out << "pi = {" << join(pi["primes"], ",") << "}: " << error_text(pi["error"]) << "\n";
  } else {
    const std::string head = pi["mode"] == "p" ? "p = " + pi["p"].dump() + " (pi = {" + join(pi["primes"], ",") + "})"
                                               : "pi = {" + join(pi["primes"], ",") + "}";
    out << head << "  pi-classes " << join(pi["pi_classes"], ",") << "  |H| " << pi["max_abelian_pi_order"].dump()
        << "\n";
    std::string d;
    for (const auto &row : pi["decomposition"])
      d += (d.empty() ? "" : " | ") + join(row, " ");
    line(out, "  ", "decomposition", d);
    line(out, "  ", "PIM degrees", join(pi["pim_degrees"], ", "));
    line(out, "  ", "Phi(1) >= |G|_pi'", pi["pim_degree_lower_bound"]["verdict"].get<std::string>() + " (bound " +
                                            pi["pim_degree_lower_bound"]["bound"].dump() + ")");
    line(out, "  ", "preimage cross-check", pi["preimage_crosscheck"].get<std::string>());
    line(out, "  ", "galois action on I_pi", pi["galois_action_on_ipi"].get<std::string>());
    render_section(out, "irreducible pi-partial characters", "phi", pi["ipi"]);
    render_section(out, "pi-projective indecomposables", "Phi", pi["pim"]);
    const auto &lem = pi["lemma"];
    if (lem.contains("entries")) {
      out << "upper-bound lemma (|H| = " << lem["h_order"].dump() << "): " << lem["verdict"].get<std::string>()
          << "\n";
      for (const auto &e : lem["entries"])
        out << "  Phi" << e["phi"].dump() << ": mu" << e["mu"].dump() << " multiplicity " << e["multiplicity"].dump()
            << ", constituent " << e["constituent"].get<std::string>() << ", Phi(1) = " << e["pim_degree"].dump()
            << " <= |G:H| = " << e["h_index"].dump() << " " << e["within_bound"].get<std::string>() << "\n";
    } else {
      out << "upper-bound lemma: fail (" << error_text(lem["error"]) << ")\n";
    }
  }
  out << "verdict: " << rep["verdict"].get<std::string>() << "\n";
}

inline void render_table_summary(std::ostream &out, const ordered_json &t) {
  out << "table " << t["name"].get<std::string>() << "  kind " << t["kind"].get<std::string>() << "  order "
      << t["order"].dump() << "  classes " << t["classes"].dump();
  if (!t["prime"].is_null())
    out << "  prime " << t["prime"].dump();
  if (!t["pi"].empty())
    out << "  pi {" << join(t["pi"], ",") << "}";
  out << "\n";
  for (const auto &c : t["provenance"])
    out << "  % " << c.get<std::string>() << "\n";
  line(out, "  ", "class orders", join(t["class_orders"], ","));
  line(out, "  ", "s", t["s"].get<std::string>());
}

inline PrimeSet parse_prime_list(const std::string &text) {
  PrimeSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = chillag::detail::trim(item);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string_view::npos)
      throw Error(ErrorKind::ParseError, "bad prime list '" + text + "'");
    const long long p = std::stoll(std::string(t));
    if (!is_prime(p))
      throw Error(ErrorKind::ParseError, std::to_string(p) + " is not a prime");
    out.insert(static_cast<int>(p));
  }
  if (out.empty())
    throw Error(ErrorKind::ParseError, "empty prime list");
  return out;
}

inline void emit(std::ostream &out, const ordered_json &j) { out << j.dump(2) << "\n"; }

inline ordered_json error_doc(const char *command, const Error &e) {
  return {{"command", command}, {"verdict", "fail"}, {"error", report::error_json(e)}};
}

} // namespace detail

/// Runs one invocation; argv[0] is the program name.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  using namespace detail;
  CLI::App app{"Table-sum and column-sum verification for character tables of finite groups"};
  app.require_subcommand(1);
  bool json = false;
  std::uint64_t seed = 1;
  double tol = 1e-6;

  std::vector<std::string> groups;
  std::string pi_text;
  int p_value = 0;
  int jobs = 1;
  auto *analyze = app.add_subcommand("analyze", "ordinary, pi-partial and PIM table analysis");
  analyze->add_option("group", groups, "catalog name or generators in cycle notation")->required();
  auto *pi_opt = analyze->add_option("--pi", pi_text, "comma-separated prime set");
  auto *p_opt = analyze->add_option("--p", p_value, "a prime p; analyzes pi = p'");
  pi_opt->excludes(p_opt);
  analyze->add_option("--jobs", jobs, "parallel group analyses")->check(CLI::PositiveNumber);

  std::string path;
  auto *ingest = app.add_subcommand("ingest", "load and validate a table file");
  ingest->add_option("file", path)->required();
  auto *columns = app.add_subcommand("columns", "column sums of a table file with rationality verdicts");
  columns->add_option("file", path)->required();

  std::string group;
  auto *crosscheck = app.add_subcommand("crosscheck", "numeric reconstruction against the exact table");
  crosscheck->add_option("group", group)->required();

  auto *catalog = app.add_subcommand("catalog", "list the built-in groups");

  for (auto *sub : {analyze, ingest, columns, crosscheck, catalog})
    sub->add_flag("--json", json, "machine-readable output");
  for (auto *sub : {analyze, crosscheck}) {
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--tol", tol, "numeric tolerance")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  const report::Settings settings{seed, tol};

  try {
    if (*catalog) {
      if (json) {
        emit(out, {{"command", "catalog"}, {"groups", catalog_names()}});
      } else {
        for (const auto &name : catalog_names())
          out << name << "\n";
      }
      return 0;
    }

    if (*analyze) {
      std::optional<report::PiRequest> req;
      if (*pi_opt)
        req = report::PiRequest{parse_prime_list(pi_text), std::nullopt};
      if (*p_opt) {
        if (!is_prime(p_value))
          throw Error(ErrorKind::ParseError, std::to_string(p_value) + " is not a prime");
        req = report::PiRequest{{}, p_value};
      }
      std::vector<report::AnalyzeResult> results(groups.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < groups.size(); i = next++) {
          try {
            auto r = req;
            if (r && r->p) {
              const PermGroup g = parse_group(groups[i]);
              r->pi = complement_primes(static_cast<std::int64_t>(g.order()), {*r->p});
            }
            results[i] = report::analyze_group(groups[i], r, settings);
          } catch (const Error &e) {
            results[i].json = {{"group", {{"name", groups[i]}}}, {"verdict", "fail"}, {"error", report::error_json(e)}};
            results[i].exit_code = report::is_input_error(e.kind()) ? 3 : 2;
          }
        }
      };
      std::vector<std::thread> pool;
      const int n_threads = std::min<int>(jobs, static_cast<int>(groups.size()));
      for (int t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
      worker();
      for (auto &t : pool)
        t.join();

      int code = 0;
      ordered_json reports = ordered_json::array();
      for (auto &r : results) {
        code = std::max(code, r.exit_code);
        reports.push_back(r.json);
      }
      if (json) {
        emit(out, {{"command", "analyze"}, {"reports", reports}, {"verdict", code == 0 ? "pass" : "fail"}});
      } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
          if (i)
            out << "\n";
          render_analyze(out, reports[i]);
        }
      }
      return code;
    }

    if (*crosscheck) {
      const auto r = report::crosscheck_group(group, settings);
      if (json) {
        ordered_json doc = {{"command", "crosscheck"}};
        doc.update(r.json);
        emit(out, doc);
      } else {
        const auto &j = r.json;
        out << "group " << j["group"]["name"].get<std::string>() << "  order " << j["group"]["order"].dump() << "\n";
        for (const char *key : {"irr", "class_algebra"}) {
          const auto &s = j[key];
          line(out, "  ", std::string(key) + " table",
               s["verdict"].get<std::string>() + " (residual " + sci(s["residual"].get<double>()) + ", deviation " +
                   sci(s["max_deviation"].get<double>()) + ")");
        }
        out << "verdict: " << j["verdict"].get<std::string>() << "\n";
      }
      return r.exit_code;
    }

    // ingest / columns
    const TableFile t = read_table_file(path);
    if (*ingest) {
      const auto summary = report::table_file_summary(t);
      if (json)
        emit(out, {{"command", "ingest"}, {"table", summary}, {"verdict", "pass"}});
      else
        render_table_summary(out, summary);
      return 0;
    }
    const auto r = report::columns_report(t);
    if (json) {
      ordered_json doc = {{"command", "columns"}};
      doc.update(r.json);
      emit(out, doc);
    } else {
      render_table_summary(out, r.json["table"]);
      render_columns(out, "  ", r.json["columns"]);
      line(out, "  ", "irrational columns", r.json["columns"]["irrational_columns"].dump());
      line(out, "  ", "column integrality", r.json["column_integrality"].get<std::string>());
    }
    return r.exit_code;
  } catch (const Error &e) {
    const char *cmd = *analyze ? "analyze" : *crosscheck ? "crosscheck" : *ingest ? "ingest" : "columns";
    if (json)
      emit(out, error_doc(cmd, e));
    err << "error: " << e.what() << "\n";
    return report::is_input_error(e.kind()) ? 3 : 2;
  }
}

} // namespace chillag::cli
