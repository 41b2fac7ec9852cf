#pragma once

// Brute-force oracles for tests. They work from raw element lists and avoid
// the library's subgroup, table and linear-algebra code paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "chillag/arith.hpp"
#include "chillag/cyclotomic.hpp"
#include "chillag/permutation.hpp"

namespace oracle {

using chillag::Cyclotomic;
using chillag::Permutation;
using chillag::PrimeSet;

inline std::vector<Permutation> closure(const std::vector<Permutation> &gens, int degree) {
  std::set<Permutation> seen{Permutation::identity(degree)};
  std::vector<Permutation> queue{Permutation::identity(degree)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto &g : gens) {
      Permutation next = queue[i] * g;
      if (seen.insert(next).second)
        queue.push_back(std::move(next));
    }
  return {seen.begin(), seen.end()};
}

inline int element_order(const Permutation &x) {
  Permutation y = x;
  int k = 1;
  while (!y.is_identity()) {
    y = y * x;
    ++k;
  }
  return k;
}

/// Sizes of the conjugation orbits, ascending.
inline std::vector<std::size_t> class_sizes(const std::vector<Permutation> &elements) {
  std::set<Permutation> done;
  std::vector<std::size_t> sizes;
  for (const auto &x : elements) {
    if (done.contains(x))
      continue;
    std::set<Permutation> orbit;
    for (const auto &g : elements)
      orbit.insert(g.inverse() * x * g);
    done.insert(orbit.begin(), orbit.end());
    sizes.push_back(orbit.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

/// Largest abelian pi-subgroup among those generated by two commuting
/// pi-elements (every abelian subgroup of the catalog groups has rank <= 2).
inline std::size_t max_abelian_pi_order(const std::vector<Permutation> &elements, const PrimeSet &pi, int degree) {
  std::vector<Permutation> pis;
  for (const auto &x : elements)
    if (chillag::is_pi_number(element_order(x), pi))
      pis.push_back(x);
  std::size_t best = 1;
  for (std::size_t i = 0; i < pis.size(); ++i)
    for (std::size_t j = i; j < pis.size(); ++j)
      if (pis[i] * pis[j] == pis[j] * pis[i])
        best = std::max(best, closure({pis[i], pis[j]}, degree).size());
  return best;
}

/// |O_pi(G)|: the subgroup generated by every pi-element whose normal
/// closure is a pi-group.
inline std::size_t o_pi_order(const std::vector<Permutation> &elements, const PrimeSet &pi, int degree) {
  std::vector<Permutation> keep;
  for (const auto &x : elements) {
    if (!chillag::is_pi_number(element_order(x), pi))
      continue;
    std::set<Permutation> conj;
    for (const auto &g : elements)
      conj.insert(g.inverse() * x * g);
    const auto n = closure({conj.begin(), conj.end()}, degree);
    if (chillag::is_pi_number(static_cast<std::int64_t>(n.size()), pi))
      keep.push_back(x);
  }
  return closure(keep, degree).size();
}

/// Integer-valued class functions of norm 1 with positive degree and
/// |v(g)| <= v(1); returns every orthonormal family of `classes` such
/// functions containing the trivial one. For groups with rational tables
/// there is exactly one, the character table.
inline std::vector<std::vector<std::vector<int>>> rational_tables(const std::vector<std::int64_t> &sizes) {
  const int n = static_cast<int>(sizes.size());
  std::int64_t order = 0;
  for (auto s : sizes)
    order += s;
  auto inner = [&](const std::vector<int> &a, const std::vector<int> &b) {
    std::int64_t acc = 0;
    for (int j = 0; j < n; ++j)
      acc += sizes[j] * a[j] * b[j];
    return acc;
  };
  std::vector<std::vector<int>> candidates;
  for (int d = 1; d * d <= order; ++d) {
    std::vector<int> v(n, -d);
    v[0] = d;
    for (;;) {
      if (inner(v, v) == order)
        candidates.push_back(v);
      int j = 1;
      while (j < n && v[j] == d)
        v[j++] = -d;
      if (j == n)
        break;
      ++v[j];
    }
  }
  std::vector<std::vector<std::vector<int>>> found;
  std::vector<int> chosen;
  const std::vector<int> trivial(n, 1);
  std::function<void(std::size_t)> search = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == n) {
      std::vector<std::vector<int>> rows;
      for (int c : chosen)
        rows.push_back(candidates[c]);
      if (std::find(rows.begin(), rows.end(), trivial) != rows.end())
        found.push_back(rows);
      return;
    }
    for (std::size_t c = from; c < candidates.size(); ++c) {
      bool ok = true;
      for (int o : chosen)
        ok = ok && inner(candidates[o], candidates[c]) == 0;
      if (!ok)
        continue;
      chosen.push_back(static_cast<int>(c));
      search(c + 1);
      chosen.pop_back();
    }
  };
  search(0);
  return found;
}

/// Irreducible Brauer characters of a p-solvable group by brute force. By
/// the Fong-Swan theorem they are among the distinct restrictions; search
/// every subset of size n (number of p-regular classes) for one in which all
/// restrictions are nonnegative integer combinations, trying every
/// coefficient vector up to the largest degree. Returns all such subsets.
inline std::vector<std::vector<std::vector<Cyclotomic>>>
brauer_bases(const std::vector<std::vector<Cyclotomic>> &restrictions, std::size_t n) {
  std::vector<std::vector<Cyclotomic>> distinct;
  for (const auto &r : restrictions)
    if (std::find(distinct.begin(), distinct.end(), r) == distinct.end())
      distinct.push_back(r);
  long long max_degree = 0;
  for (const auto &r : distinct)
    max_degree = std::max(max_degree, r[0].rational_value().convert_to<long long>());

  auto representable = [&](const std::vector<std::vector<Cyclotomic>> &basis, const std::vector<Cyclotomic> &target) {
    std::vector<long long> c(basis.size(), 0);
    for (;;) {
      std::vector<Cyclotomic> sum(target.size());
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t j = 0; j < target.size(); ++j)
          sum[j] += basis[b][j] * Cyclotomic(c[b]);
      if (sum == target)
        return true;
      std::size_t b = 0;
      while (b < c.size() && c[b] == max_degree)
        c[b++] = 0;
      if (b == c.size())
        return false;
      ++c[b];
    }
  };

  std::vector<std::vector<std::vector<Cyclotomic>>> found;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> search = [&](std::size_t from) {
    if (idx.size() == n) {
      std::vector<std::vector<Cyclotomic>> basis;
      for (auto i : idx)
        basis.push_back(distinct[i]);
      bool ok = true;
      for (const auto &r : distinct)
        ok = ok && representable(basis, r);
      if (ok)
        found.push_back(basis);
      return;
    }
    for (std::size_t i = from; i < distinct.size(); ++i) {
      idx.push_back(i);
      search(i + 1);
      idx.pop_back();
    }
  };
  search(0);
  return found;
}

} // namespace oracle
