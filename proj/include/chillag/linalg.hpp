#pragma once

// Exact rational linear algebra, including rational solves of systems whose
// entries are cyclotomic (each entry expands into its basis coordinates).

#include <numeric>
#include <optional>
#include <vector>

#include "chillag/cyclotomic.hpp"
#include "chillag/rational.hpp"

namespace chillag {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Row-reduces in place to reduced echelon form; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RationalMatrix &m) {
  std::vector<std::size_t> pivots;
  if (m.empty())
    return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c].is_zero())
      ++sel;
    if (sel == rows)
      continue;
    std::swap(m[r], m[sel]);
    const Rational inv = 1 / m[r][c];
    for (auto &v : m[r])
      if (!v.is_zero())
        v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero())
        continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero())
          m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

enum class SolveStatus { Unique, NoSolution, Underdetermined };

struct SolveResult {
  SolveStatus status = SolveStatus::NoSolution;
  std::vector<Rational> x;
};

/// Solves sum_c x_c columns[c] = targets[t] for rational x, one elimination
/// for all targets. Columns and targets are vectors of cyclotomics of equal
/// length; each entry contributes one equation per basis coordinate.
inline std::vector<SolveResult> solve_rational_many(const std::vector<std::vector<Cyclotomic>> &columns,
                                                    const std::vector<std::vector<Cyclotomic>> &targets) {
  const std::size_t k = columns.size(), m = targets.size();
  const std::size_t len = !columns.empty() ? columns[0].size() : (!targets.empty() ? targets[0].size() : 0);
  int field = 1;
  for (const auto &col : columns)
    for (const auto &v : col)
      field = std::lcm(field, v.order());
  for (const auto &t : targets)
    for (const auto &v : t)
      field = std::lcm(field, v.order());

  RationalMatrix system;
  for (std::size_t r = 0; r < len; ++r) {
    std::vector<std::vector<Rational>> coords;
    for (const auto &col : columns)
      coords.push_back(col[r].coordinates(field));
    for (const auto &t : targets)
      coords.push_back(t[r].coordinates(field));
    for (int e = 0; e < field; ++e) {
      std::vector<Rational> row(k + m);
      bool nonzero = false;
      for (std::size_t c = 0; c < k + m; ++c) {
        row[c] = coords[c][e];
        nonzero = nonzero || !row[c].is_zero();
      }
      if (nonzero)
        system.push_back(std::move(row));
    }
  }

  // eliminate on the first k columns only
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < k && rank < system.size(); ++c) {
    std::size_t sel = rank;
    while (sel < system.size() && system[sel][c].is_zero())
      ++sel;
    if (sel == system.size())
      continue;
    std::swap(system[rank], system[sel]);
    const Rational inv = 1 / system[rank][c];
    for (auto &v : system[rank])
      if (!v.is_zero())
        v *= inv;
    for (std::size_t i = 0; i < system.size(); ++i) {
      if (i == rank || system[i][c].is_zero())
        continue;
      const Rational f = system[i][c];
      for (std::size_t j = c; j < k + m; ++j)
        if (!system[rank][j].is_zero())
          system[i][j] -= f * system[rank][j];
    }
    pivots.push_back(c);
    ++rank;
  }

  std::vector<SolveResult> results(m);
  for (std::size_t t = 0; t < m; ++t) {
    auto &res = results[t];
    bool consistent = true;
    for (std::size_t i = rank; i < system.size() && consistent; ++i)
      consistent = system[i][k + t].is_zero();
    if (!consistent) {
      res.status = SolveStatus::NoSolution;
      continue;
    }
    if (rank < k) {
      res.status = SolveStatus::Underdetermined;
      continue;
    }
    res.status = SolveStatus::Unique;
    res.x.resize(k);
    for (std::size_t r = 0; r < k; ++r)
      res.x[pivots[r]] = system[r][k + t];
  }
  return results;
}

inline SolveResult solve_rational(const std::vector<std::vector<Cyclotomic>> &columns,
                                  const std::vector<Cyclotomic> &target) {
  return solve_rational_many(columns, {target}).front();
}

/// Rank over Q of a family of cyclotomic vectors.
inline std::size_t rational_rank(const std::vector<std::vector<Cyclotomic>> &vectors) {
  if (vectors.empty())
    return 0;
  int field = 1;
  for (const auto &vec : vectors)
    for (const auto &v : vec)
      field = std::lcm(field, v.order());
  RationalMatrix m;
  for (const auto &vec : vectors) {
    std::vector<Rational> row;
    for (const auto &v : vec) {
      auto c = v.coordinates(field);
      row.insert(row.end(), c.begin(), c.end());
    }
    m.push_back(std::move(row));
  }
  return row_reduce(m).size();
}

inline bool is_nonnegative_integer(const Rational &q) { return is_integral(q) && q >= 0; }

} // namespace chillag
