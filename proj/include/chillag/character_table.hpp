#pragma once

// Ordinary character tables by the Dixon-Schneider method: split the class
// algebra over F_l into common eigenvectors (central characters), recover
// degrees and values mod l, then lift each value to Q(zeta_e) by reading off
// eigenvalue multiplicities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "chillag/cyclotomic.hpp"
#include "chillag/galois_rows.hpp"
#include "chillag/modular.hpp"
#include "chillag/perm_group.hpp"
#include "chillag/tensor.hpp"

namespace chillag {

struct CharacterTable {
  std::size_t group_order = 1;
  int exponent = 1;
  std::vector<std::int64_t> class_sizes;
  std::vector<int> class_orders;
  std::vector<int> inverse_class; // class of g^-1
  std::vector<std::vector<Cyclotomic>> chars; // chars[i][j] = chi_i(g_j)

  std::size_t size() const { return chars.size(); }

  std::vector<std::int64_t> degrees() const {
    std::vector<std::int64_t> out;
    for (const auto &row : chars)
      out.push_back(static_cast<std::int64_t>(row[0].rational_value().convert_to<long long>()));
    return out;
  }
};

/// Smallest prime l = 1 (mod e) with l > 2 sqrt(|G|).
inline std::int64_t dixon_prime(const PermGroup &g) {
  const std::int64_t e = g.exponent();
  const auto order = static_cast<std::int64_t>(g.order());
  for (std::int64_t l = e + 1;; l += e)
    if (l * l > 4 * order && is_prime(l))
      return l;
}

namespace detail {

// A subspace of F_l^n held as a row-reduced basis.
struct Eigenspace {
  modular::Mat basis;
  std::vector<std::size_t> pivots;
};

inline Eigenspace make_space(modular::Mat rows, std::int64_t p) {
  Eigenspace s;
  s.pivots = modular::row_reduce(rows, p);
  s.basis = std::move(rows);
  return s;
}

// Splits `space` into the eigenspaces of `m` restricted to it.
inline std::vector<Eigenspace> split_space(const Eigenspace &space, const modular::Mat &m,
                                           std::int64_t p) {
  const std::size_t d = space.basis.size();
  if (d <= 1)
    return {space};
  modular::Mat restricted(d, modular::Vec(d, 0));
  for (std::size_t c = 0; c < d; ++c) {
    const modular::Vec image = modular::apply(m, space.basis[c], p);
    for (std::size_t r = 0; r < d; ++r)
      restricted[r][c] = image[space.pivots[r]];
  }
  const auto eigenvalues = modular::roots(modular::charpoly(restricted, p), p);
  if (eigenvalues.size() <= 1)
    return {space};
  std::vector<Eigenspace> out;
  std::size_t total = 0;
  for (std::int64_t lambda : eigenvalues) {
    modular::Mat shifted = restricted;
    for (std::size_t r = 0; r < d; ++r)
      shifted[r][r] = modular::reduce(shifted[r][r] - lambda, p);
    modular::Mat rows;
    for (const auto &y : modular::kernel(shifted, p)) {
      modular::Vec v(space.basis[0].size(), 0);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t k = 0; k < v.size(); ++k)
          v[k] = (v[k] + y[c] * space.basis[c][k]) % p;
      rows.push_back(std::move(v));
    }
    total += rows.size();
    out.push_back(make_space(std::move(rows), p));
  }
  if (total != d)
    throw Error(ErrorKind::SplitFailed, "class matrix not diagonalizable on a common eigenspace");
  return out;
}

inline int compare_values(const Cyclotomic &x, const Cyclotomic &y) {
  const auto a = x.to_complex(), b = y.to_complex();
  constexpr double eps = 1e-9;
  if (std::abs(a.real() - b.real()) > eps)
    return a.real() > b.real() ? -1 : 1;
  if (std::abs(a.imag() - b.imag()) > eps)
    return a.imag() > b.imag() ? -1 : 1;
  if (x == y)
    return 0;
  return canonical_less(x, y) ? -1 : 1;
}

} // namespace detail

/// Row order: degree, then values column by column (larger real part first,
/// then larger imaginary part). The trivial character comes first.
inline bool row_precedes(const std::vector<Cyclotomic> &a, const std::vector<Cyclotomic> &b) {
  const Rational da = a[0].rational_value(), db = b[0].rational_value();
  if (da != db)
    return da < db;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const int c = detail::compare_values(a[j], b[j]);
    if (c != 0)
      return c < 0;
  }
  return false;
}

inline CharacterTable character_table(const PermGroup &g, std::uint64_t seed = 1) {
  const int n = static_cast<int>(g.class_count());
  const auto order = static_cast<std::int64_t>(g.order());
  const std::int64_t p = dixon_prime(g);
  const ClassTensor tensor = class_structure_constants(g);

  CharacterTable table;
  table.group_order = g.order();
  table.exponent = g.exponent();
  table.class_sizes = class_sizes(g);
  for (const auto &c : g.classes())
    table.class_orders.push_back(c.element_order);
  table.inverse_class = power_map(g, -1);

  std::vector<modular::Mat> class_matrices(n, modular::Mat(n, modular::Vec(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        class_matrices[i][j][k] = tensor(i, j, k) % p;

  std::vector<detail::Eigenspace> spaces{detail::make_space(modular::identity(n), p)};
  auto all_split = [&] {
    return std::all_of(spaces.begin(), spaces.end(),
                       [](const detail::Eigenspace &s) { return s.basis.size() == 1; });
  };
  auto refine = [&](const modular::Mat &m) {
    std::vector<detail::Eigenspace> next;
    for (const auto &s : spaces)
      for (auto &piece : detail::split_space(s, m, p))
        next.push_back(std::move(piece));
    spaces = std::move(next);
  };
  for (int i = 1; i < n && !all_split(); ++i)
    refine(class_matrices[i]);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 32 && !all_split(); ++attempt) {
    modular::Mat combo(n, modular::Vec(n, 0));
    for (int i = 0; i < n; ++i) {
      const auto r = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          combo[j][k] = (combo[j][k] + r * class_matrices[i][j][k]) % p;
    }
    refine(combo);
  }
  if (!all_split() || static_cast<int>(spaces.size()) != n)
    throw Error(ErrorKind::SplitFailed, "common eigenspaces did not reach dimension one");

  const std::int64_t theta = mod_pow(modular::primitive_root(p), (p - 1) / g.exponent(), p);
  std::vector<std::vector<int>> powers(g.exponent());
  for (int m = 0; m < g.exponent(); ++m)
    powers[m] = power_map(g, m);

  for (const auto &space : spaces) {
    modular::Vec omega = space.basis[0];
    if (omega[0] == 0)
      throw Error(ErrorKind::SplitFailed, "eigenvector vanishes on the identity class");
    const std::int64_t norm = mod_inv(omega[0], p);
    for (auto &v : omega)
      v = v * norm % p;

    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i)
      sum = (sum + omega[i] * omega[table.inverse_class[i]] % p * mod_inv(table.class_sizes[i], p)) % p;
    const std::int64_t target = order % p * mod_inv(sum, p) % p;
    std::int64_t degree = 0;
    for (std::int64_t d = 1; d * d <= order; ++d)
      if (d * d % p == target) {
        degree = d;
        break;
      }
    if (degree == 0)
      throw Error(ErrorKind::LiftOutOfRange, "no degree d with d^2 = |G|/S mod l");

    modular::Vec values(n);
    for (int i = 0; i < n; ++i)
      values[i] = degree * omega[i] % p * mod_inv(table.class_sizes[i], p) % p;

    std::vector<Cyclotomic> row(n);
    for (int i = 0; i < n; ++i) {
      const int o = table.class_orders[i];
      const std::int64_t root = mod_pow(theta, g.exponent() / o, p);
      const std::int64_t inv_o = mod_inv(o, p);
      std::vector<Cyclotomic::Term> terms;
      std::int64_t total = 0;
      for (int t = 0; t < o; ++t) {
        std::int64_t acc = 0;
        const std::int64_t step = mod_pow(root, static_cast<std::int64_t>(o - t) % o, p);
        std::int64_t w = 1;
        for (int m = 0; m < o; ++m) {
          acc = (acc + values[powers[m][i]] * w) % p;
          w = w * step % p;
        }
        const std::int64_t mult = acc * inv_o % p;
        if (mult > degree)
          throw Error(ErrorKind::LiftOutOfRange,
                      "eigenvalue multiplicity " + std::to_string(mult) + " exceeds degree");
        total += mult;
        if (mult != 0)
          terms.emplace_back(t, Rational(mult));
      }
      if (total != degree)
        throw Error(ErrorKind::LiftOutOfRange, "multiplicities do not sum to the degree");
      row[i] = Cyclotomic::make(o, terms);
    }
    table.chars.push_back(std::move(row));
  }
  std::sort(table.chars.begin(), table.chars.end(), row_precedes);
  return table;
}

struct OrthogonalityReport {
  bool rows = false;
  bool columns = false;
  bool ok() const { return rows && columns; }
};

/// Both orthogonality relations, checked exactly.
inline OrthogonalityReport check_orthogonality(const CharacterTable &t) {
  const std::size_t n = t.size();
  OrthogonalityReport report{true, true};
  std::vector<std::vector<Cyclotomic>> conj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &v : t.chars[i])
      conj[i].push_back(v.conj());
  const int e = t.exponent;
  for (std::size_t i = 0; i < n && report.rows; ++i)
    for (std::size_t k = i; k < n; ++k) {
      CyclotomicAccumulator acc(e);
      for (std::size_t j = 0; j < n; ++j)
        acc.add_product(t.chars[i][j], conj[k][j], Rational(t.class_sizes[j]));
      const Cyclotomic expected(i == k ? static_cast<long long>(t.group_order) : 0LL);
      if (acc.value() != expected) {
        report.rows = false;
        break;
      }
    }
  for (std::size_t j = 0; j < n && report.columns; ++j)
    for (std::size_t k = j; k < n; ++k) {
      CyclotomicAccumulator acc(e);
      for (std::size_t i = 0; i < n; ++i)
        acc.add_product(t.chars[i][j], conj[i][k]);
      const Cyclotomic expected(
          j == k ? static_cast<long long>(t.group_order / t.class_sizes[j]) : 0LL);
      if (acc.value() != expected) {
        report.columns = false;
        break;
      }
    }
  return report;
}

/// <theta, chi> = |G|^-1 sum_j |K_j| theta(g_j) conj(chi(g_j)).
inline Cyclotomic inner_product(const CharacterTable &t, const std::vector<Cyclotomic> &theta,
                                const std::vector<Cyclotomic> &chi) {
  CyclotomicAccumulator acc(t.exponent);
  const Rational inv_order(1, static_cast<long long>(t.group_order));
  for (std::size_t j = 0; j < theta.size(); ++j)
    acc.add_product(theta[j], chi[j].conj(), Rational(t.class_sizes[j]) * inv_order);
  return acc.value();
}

/// alpha(i,j,k) = <chi_i chi_j, chi_k>; all must be nonnegative integers.
inline RationalTensor irr_structure_constants(const CharacterTable &t) {
  const int n = static_cast<int>(t.size());
  RationalTensor alpha(n);
  std::vector<std::vector<Cyclotomic>> conj(n);
  for (int i = 0; i < n; ++i)
    for (const auto &v : t.chars[i])
      conj[i].push_back(v.conj());
  const Rational inv_order(1, static_cast<long long>(t.group_order));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<Cyclotomic> product(n);
      for (int m = 0; m < n; ++m)
        product[m] = t.chars[i][m] * t.chars[j][m];
      for (int k = 0; k < n; ++k) {
        CyclotomicAccumulator acc(t.exponent);
        for (int m = 0; m < n; ++m)
          acc.add_product(product[m], conj[k][m], Rational(t.class_sizes[m]) * inv_order);
        const Cyclotomic v = acc.value();
        if (!v.is_integer() || v.rational_value() < 0)
          throw Error(ErrorKind::NonIntegralConstant,
                      "<chi_" + std::to_string(i + 1) + " chi_" + std::to_string(j + 1) + ", chi_" +
                          std::to_string(k + 1) + "> = " + to_string(v));
        alpha(i, j, k) = v.rational_value();
        alpha(j, i, k) = v.rational_value();
      }
    }
  return alpha;
}

inline std::vector<int> galois_action_on_irr(const CharacterTable &t, const GaloisAutomorphism &sigma) {
  int missing = -1;
  auto perm = row_permutation(t.chars, sigma.k, &missing);
  if (!perm)
    throw Error(ErrorKind::ActionViolated,
                "row " + std::to_string(missing + 1) + " has no image under k=" + std::to_string(sigma.k));
  return *perm;
}

} // namespace chillag
