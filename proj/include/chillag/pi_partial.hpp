#pragma once

// pi-partial characters of pi-separable groups: irreducible pi-partials,
// decomposition matrices, pi-projective indecomposables and the structure
// constants of the algebras they span.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chillag/character_table.hpp"
#include "chillag/galois_rows.hpp"
#include "chillag/linalg.hpp"
#include "chillag/subgroups.hpp"
#include "chillag/tensor.hpp"

namespace chillag {

struct PartialCharacter {
  std::vector<Cyclotomic> values; // on the pi-classes
  std::int64_t degree = 0;
  std::vector<int> preimages; // rows of the ordinary table restricting to this
};

struct IpiSet {
  PrimeSet pi;
  std::vector<int> class_ids; // pi-classes of G
  std::vector<PartialCharacter> irreducibles;

  std::size_t size() const { return irreducibles.size(); }
  std::vector<std::vector<Cyclotomic>> rows() const {
    std::vector<std::vector<Cyclotomic>> out;
    for (const auto &phi : irreducibles)
      out.push_back(phi.values);
    return out;
  }
  std::vector<std::int64_t> degrees() const {
    std::vector<std::int64_t> out;
    for (const auto &phi : irreducibles)
      out.push_back(phi.degree);
    return out;
  }
};

struct DecompositionMatrix {
  std::vector<std::vector<std::int64_t>> d; // d[chi][phi]
};

struct PimSet {
  std::vector<std::vector<Cyclotomic>> pims; // on all classes of G
  std::vector<std::int64_t> degrees;

  /// Values on the given classes only.
  std::vector<std::vector<Cyclotomic>> restricted(const std::vector<int> &classes) const {
    std::vector<std::vector<Cyclotomic>> out;
    for (const auto &row : pims) {
      std::vector<Cyclotomic> r;
      for (int c : classes)
        r.push_back(row[c]);
      out.push_back(std::move(r));
    }
    return out;
  }
};

namespace detail {

inline std::int64_t to_int64(const Rational &q) { return numerator(q).convert_to<std::int64_t>(); }

inline std::string join_rationals(const std::vector<Rational> &xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? ", " : "") + to_string(xs[i]);
  return out + ")";
}

/// Coefficients of target in the basis, required to be nonnegative integers.
inline std::optional<std::vector<std::int64_t>> nonnegative_integer_solution(const SolveResult &r) {
  if (r.status != SolveStatus::Unique)
    return std::nullopt;
  std::vector<std::int64_t> out;
  for (const auto &x : r.x) {
    if (!is_nonnegative_integer(x))
      return std::nullopt;
    out.push_back(to_int64(x));
  }
  return out;
}

} // namespace detail

/// Distinct restrictions of the irreducible characters to the pi-classes.
inline std::vector<PartialCharacter> restricted_characters(const PermGroup &g, const CharacterTable &t,
                                                           const PrimeSet &pi) {
  if (!is_pi_separable(g, pi, std::max(order_cap(), g.order())))
    throw Error(ErrorKind::NotPiSeparable, "group of order " + std::to_string(g.order()) +
                                               " is not separable for the given primes");
  const auto classes = pi_classes(g, pi);
  std::vector<PartialCharacter> out;
  for (std::size_t chi = 0; chi < t.size(); ++chi) {
    std::vector<Cyclotomic> values;
    for (int c : classes)
      values.push_back(t.chars[chi][c]);
    auto it = std::find_if(out.begin(), out.end(), [&](const PartialCharacter &p) { return p.values == values; });
    if (it != out.end()) {
      it->preimages.push_back(static_cast<int>(chi));
      continue;
    }
    PartialCharacter p;
    p.degree = detail::to_int64(values[0].rational_value());
    p.values = std::move(values);
    p.preimages.push_back(static_cast<int>(chi));
    out.push_back(std::move(p));
  }
  return out;
}

/// Greedy acceptance in increasing degree: a restriction is reducible iff it
/// is a nonnegative integer combination of the irreducibles accepted so far.
inline IpiSet irreducible_pi_partials(std::vector<PartialCharacter> restrictions, const PrimeSet &pi,
                                      std::vector<int> class_ids) {
  std::stable_sort(restrictions.begin(), restrictions.end(), [](const PartialCharacter &a, const PartialCharacter &b) {
    if (a.degree != b.degree)
      return a.degree < b.degree;
    return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(), b.values.end(),
                                        canonical_less);
  });
  // the trivial character first
  auto trivial = std::find_if(restrictions.begin(), restrictions.end(), [](const PartialCharacter &p) {
    return std::all_of(p.values.begin(), p.values.end(), [](const Cyclotomic &v) { return v == Cyclotomic(1); });
  });
  if (trivial != restrictions.end())
    std::rotate(restrictions.begin(), trivial, trivial + 1);

  IpiSet out;
  out.pi = pi;
  out.class_ids = std::move(class_ids);
  std::vector<std::vector<Cyclotomic>> basis;
  for (auto &cand : restrictions) {
    if (!basis.empty()) {
      const auto r = solve_rational(basis, cand.values);
      if (r.status == SolveStatus::Unique) {
        if (detail::nonnegative_integer_solution(r))
          continue;
        throw Error(ErrorKind::SingularSolve, "restriction of degree " + std::to_string(cand.degree) +
                                                  " lies in the span with coefficients " +
                                                  detail::join_rationals(r.x));
      }
      if (r.status == SolveStatus::Underdetermined)
        throw Error(ErrorKind::SingularSolve, "accepted pi-partials are linearly dependent");
    }
    basis.push_back(cand.values);
    out.irreducibles.push_back(std::move(cand));
  }
  if (out.irreducibles.size() != out.class_ids.size())
    throw Error(ErrorKind::BasisSizeMismatch, std::to_string(out.irreducibles.size()) +
                                                  " irreducible pi-partials for " +
                                                  std::to_string(out.class_ids.size()) + " pi-classes");
  return out;
}

inline IpiSet irreducible_pi_partials(const PermGroup &g, const CharacterTable &t, const PrimeSet &pi) {
  return irreducible_pi_partials(restricted_characters(g, t, pi), pi, pi_classes(g, pi));
}

/// chi* = sum_phi d[chi][phi] phi with nonnegative integers d.
inline DecompositionMatrix decomposition_matrix(const CharacterTable &t, const IpiSet &ipi) {
  std::vector<std::vector<Cyclotomic>> targets;
  for (const auto &row : t.chars) {
    std::vector<Cyclotomic> target;
    for (int c : ipi.class_ids)
      target.push_back(row[c]);
    targets.push_back(std::move(target));
  }
  const auto results = solve_rational_many(ipi.rows(), targets);
  DecompositionMatrix dm;
  for (std::size_t chi = 0; chi < t.size(); ++chi) {
    const auto &r = results[chi];
    auto row = detail::nonnegative_integer_solution(r);
    if (!row)
      throw Error(ErrorKind::NonIntegralDecomposition,
                  "restriction of character " + std::to_string(chi + 1) + " has coefficients " +
                      (r.status == SolveStatus::Unique ? detail::join_rationals(r.x) : std::string("(none)")));
    dm.d.push_back(std::move(*row));
  }
  return dm;
}

/// Phi_phi = sum_chi d[chi][phi] chi, checked to vanish off the pi-classes and
/// to satisfy rho* = sum Phi(1) phi and rho = sum phi(1) Phi.
inline PimSet pims(const CharacterTable &t, const IpiSet &ipi, const DecompositionMatrix &dm) {
  const std::size_t k = t.class_sizes.size(), n = ipi.size();
  std::vector<char> is_pi(k, 0);
  for (int c : ipi.class_ids)
    is_pi[c] = 1;
  PimSet out;
  for (std::size_t phi = 0; phi < n; ++phi) {
    std::vector<Cyclotomic> values(k);
    for (std::size_t c = 0; c < k; ++c) {
      CyclotomicAccumulator acc(1);
      for (std::size_t chi = 0; chi < t.size(); ++chi)
        if (dm.d[chi][phi] != 0)
          acc.add(t.chars[chi][c], Rational(dm.d[chi][phi]));
      values[c] = acc.value();
      if (!is_pi[c] && !values[c].is_zero())
        throw Error(ErrorKind::VanishingViolated, "Phi_" + std::to_string(phi + 1) + " is " + to_string(values[c]) +
                                                      " on class " + std::to_string(c + 1));
    }
    out.degrees.push_back(detail::to_int64(values[0].rational_value()));
    out.pims.push_back(std::move(values));
  }
  const Cyclotomic order(static_cast<long long>(t.group_order));
  for (std::size_t j = 0; j < n; ++j) {
    CyclotomicAccumulator acc(1);
    for (std::size_t phi = 0; phi < n; ++phi)
      acc.add(ipi.irreducibles[phi].values[j], Rational(out.degrees[phi]));
    if (acc.value() != (j == 0 ? order : Cyclotomic()))
      throw Error(ErrorKind::RegularIdentityViolated,
                  "sum Phi(1) phi differs from the regular character at pi-class " + std::to_string(j + 1));
  }
  for (std::size_t c = 0; c < k; ++c) {
    CyclotomicAccumulator acc(1);
    for (std::size_t phi = 0; phi < n; ++phi)
      acc.add(out.pims[phi][c], Rational(ipi.irreducibles[phi].degree));
    if (acc.value() != (c == 0 ? order : Cyclotomic()))
      throw Error(ErrorKind::RegularIdentityViolated,
                  "sum phi(1) Phi differs from the regular character at class " + std::to_string(c + 1));
  }
  return out;
}

namespace detail {

inline std::vector<Cyclotomic> pointwise(const std::vector<Cyclotomic> &a, const std::vector<Cyclotomic> &b) {
  std::vector<Cyclotomic> out;
  for (std::size_t c = 0; c < a.size(); ++c)
    out.push_back(a[c] * b[c]);
  return out;
}

inline RationalTensor product_constants(const std::vector<std::vector<Cyclotomic>> &basis, const char *what) {
  const int n = static_cast<int>(basis.size());
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<Cyclotomic>> products;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      pairs.emplace_back(i, j);
      products.push_back(pointwise(basis[i], basis[j]));
    }
  const auto results = solve_rational_many(basis, products);
  RationalTensor alpha(n);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const auto &r = results[p];
    const auto x = nonnegative_integer_solution(r);
    if (!x)
      throw Error(ErrorKind::NonIntegralConstant,
                  std::string(what) + "_" + std::to_string(i + 1) + " * " + what + "_" + std::to_string(j + 1) +
                      " has coefficients " +
                      (r.status == SolveStatus::Unique ? join_rationals(r.x) : std::string("(none)")));
    for (int k = 0; k < n; ++k) {
      alpha(i, j, k) = Rational((*x)[k]);
      alpha(j, i, k) = Rational((*x)[k]);
    }
  }
  return alpha;
}

} // namespace detail

/// phi_i phi_j = sum_k alpha(i,j,k) phi_k, from pointwise products.
inline RationalTensor pipartial_structure_constants(const IpiSet &ipi) {
  return detail::product_constants(ipi.rows(), "phi");
}

/// Cross-check of every constant against sum_gamma a_gamma d[gamma][k], where
/// chi_i chi_j = sum_gamma a_gamma gamma for preimages chi_i, chi_j of phi_i,
/// phi_j. Returns the first disagreeing (i, j, k), if any.
inline std::optional<std::array<int, 3>> check_preimage_formula(const IpiSet &ipi, const DecompositionMatrix &dm,
                                                                const RationalTensor &irr_alpha,
                                                                const RationalTensor &alpha) {
  const int n = static_cast<int>(ipi.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int ci = ipi.irreducibles[i].preimages.front(), cj = ipi.irreducibles[j].preimages.front();
      for (int k = 0; k < n; ++k) {
        Rational m = 0;
        for (int gamma = 0; gamma < irr_alpha.n; ++gamma)
          m += irr_alpha(ci, cj, gamma) * dm.d[gamma][k];
        if (m != alpha(i, j, k))
          return std::array<int, 3>{i, j, k};
      }
    }
  return std::nullopt;
}

/// Phi_i Phi_j = sum_k alpha(i,j,k) Phi_k; products are checked to vanish off
/// the pi-classes and solved there.
inline RationalTensor pim_structure_constants(const PimSet &p, const std::vector<int> &class_ids) {
  const std::size_t k = p.pims.empty() ? 0 : p.pims[0].size();
  std::vector<char> is_pi(k, 0);
  for (int c : class_ids)
    is_pi[c] = 1;
  for (std::size_t i = 0; i < p.pims.size(); ++i)
    for (std::size_t j = i; j < p.pims.size(); ++j)
      for (std::size_t c = 0; c < k; ++c)
        if (!is_pi[c] && !(p.pims[i][c] * p.pims[j][c]).is_zero())
          throw Error(ErrorKind::VanishingViolated, "Phi_" + std::to_string(i + 1) + " Phi_" + std::to_string(j + 1) +
                                                        " is nonzero on class " + std::to_string(c + 1));
  return detail::product_constants(p.restricted(class_ids), "Phi");
}

struct LemmaEntry {
  int index = 0;               // phi_i
  int mu = 0;                  // linear character of H used
  std::int64_t multiplicity = 0; // a_i = [mu, (phi_i)_H]
  std::int64_t pim_degree = 0;
  std::int64_t bound = 0; // |G:H|
  bool constituent = false;
  bool within_bound = false;
};

struct LemmaReport {
  std::size_t h_order = 1;
  std::vector<LemmaEntry> entries;
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const LemmaEntry &e) { return e.constituent && e.within_bound && e.multiplicity >= 1; });
  }
};

/// For each phi_i: choose a linear constituent mu of phi_i on a maximal abelian
/// pi-subgroup H, and verify Phi_i is a constituent of mu^G with
/// Phi_i(1) <= |G:H|.
inline LemmaReport lemma_upper_bound_check(const PermGroup &g, const CharacterTable &t, const IpiSet &ipi,
                                           const DecompositionMatrix &dm, const PimSet &p) {
  const auto abel = max_abelian_pi_subgroup(g, ipi.pi);
  const PermGroup h = as_perm_group(g, abel.subgroup);
  const CharacterTable th = character_table(h);
  const auto fusion = class_fusion(g, h);
  std::vector<int> pi_index(g.class_count(), -1);
  for (std::size_t j = 0; j < ipi.class_ids.size(); ++j)
    pi_index[ipi.class_ids[j]] = static_cast<int>(j);

  LemmaReport rep;
  rep.h_order = h.order();
  const std::int64_t index = static_cast<std::int64_t>(g.order() / h.order());
  for (std::size_t i = 0; i < ipi.size(); ++i) {
    std::vector<Cyclotomic> on_h;
    for (int c : fusion)
      on_h.push_back(ipi.irreducibles[i].values[pi_index[c]]);
    LemmaEntry e;
    e.index = static_cast<int>(i);
    e.pim_degree = p.degrees[i];
    e.bound = index;
    e.mu = -1;
    for (std::size_t m = 0; m < th.size(); ++m) {
      const auto a = inner_product(th, on_h, th.chars[m]);
      if (a.is_integer() && a.rational_value() >= 1) {
        e.mu = static_cast<int>(m);
        e.multiplicity = detail::to_int64(a.rational_value());
        break;
      }
    }
    if (e.mu < 0)
      throw Error(ErrorKind::ConstituentMissing, "phi_" + std::to_string(i + 1) + " has no linear constituent on H");
    const auto induced = induce_class_function(g, h, th.chars[e.mu]);
    e.constituent = true;
    for (std::size_t chi = 0; chi < t.size(); ++chi) {
      const auto m = inner_product(t, induced, t.chars[chi]);
      if (!m.is_integer() || m.rational_value() < dm.d[chi][i]) {
        e.constituent = false;
        break;
      }
    }
    e.within_bound = e.pim_degree <= index;
    if (!e.constituent)
      throw Error(ErrorKind::ConstituentMissing, "Phi_" + std::to_string(i + 1) + " is not a constituent of mu^G");
    rep.entries.push_back(e);
  }
  return rep;
}

/// The permutation of I_pi induced by sigma.
inline std::vector<int> galois_action_on_ipi(const IpiSet &ipi, const GaloisAutomorphism &sigma) {
  int missing = -1;
  auto perm = row_permutation(ipi.rows(), sigma.k, &missing);
  if (!perm)
    throw Error(ErrorKind::ActionViolated, "phi_" + std::to_string(missing + 1) + " has no image under k=" +
                                               std::to_string(sigma.k));
  return *perm;
}

} // namespace chillag
