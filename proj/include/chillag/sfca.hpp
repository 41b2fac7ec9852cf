#pragma once

// Commutative semisimple algebras given by a basis and structure constants:
// validation, multiplication matrices, eigenvalue tables, table sums, bound
// certificates and the Galois column test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chillag/cyclotomic.hpp"
#include "chillag/errors.hpp"
#include "chillag/galois_rows.hpp"
#include "chillag/linalg.hpp"
#include "chillag/tensor.hpp"

namespace chillag {

struct SFCA {
  int n = 0;
  std::vector<std::string> labels;
  RationalTensor alpha; // b_i b_j = sum_k alpha(i,j,k) b_k
  bool nonnegative = false;
};

using AlgebraElement = std::vector<Rational>;

namespace detail {

inline std::string triple(const std::vector<std::string> &labels, int i, int j, int k) {
  return "(" + labels[i] + ", " + labels[j] + ", " + labels[k] + ")";
}

} // namespace detail

/// Validates commutativity and associativity over all basis triples.
inline SFCA sfca_new(std::vector<std::string> labels, RationalTensor alpha) {
  const int n = alpha.n;
  if (static_cast<int>(labels.size()) != n)
    throw Error(ErrorKind::ShapeMismatch, std::to_string(labels.size()) + " labels for a tensor of size " +
                                              std::to_string(n));
  if (n < 1 || alpha.data.size() != static_cast<std::size_t>(n) * n * n)
    throw Error(ErrorKind::ShapeMismatch, "tensor of size " + std::to_string(n) + " holds " +
                                              std::to_string(alpha.data.size()) + " coefficients");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (alpha(i, j, k) != alpha(j, i, k))
          throw Error(ErrorKind::NotCommutative,
                      "alpha" + detail::triple(labels, i, j, k) + " = " + to_string(alpha(i, j, k)) +
                          " but alpha" + detail::triple(labels, j, i, k) + " = " + to_string(alpha(j, i, k)));

  // sparse support of b_i b_j
  std::vector<std::vector<std::pair<int, Rational>>> support(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!alpha(i, j, k).is_zero())
          support[static_cast<std::size_t>(i) * n + j].emplace_back(k, alpha(i, j, k));
  auto at = [&](int i, int j) -> const auto & { return support[static_cast<std::size_t>(i) * n + j]; };

  std::vector<Rational> left(n), right(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        std::fill(left.begin(), left.end(), Rational(0));
        std::fill(right.begin(), right.end(), Rational(0));
        for (const auto &[k, a] : at(i, j)) // (b_i b_j) b_l
          for (const auto &[m, b] : at(k, l))
            left[m] += a * b;
        for (const auto &[k, a] : at(j, l)) // b_i (b_j b_l)
          for (const auto &[m, b] : at(i, k))
            right[m] += a * b;
        for (int m = 0; m < n; ++m)
          if (left[m] != right[m])
            throw Error(ErrorKind::NotAssociative,
                        "(b_i b_j) b_k != b_i (b_j b_k) for " + detail::triple(labels, i, j, l) +
                            " at coefficient of " + labels[m]);
      }

  SFCA out;
  out.n = n;
  out.labels = std::move(labels);
  out.nonnegative = std::all_of(alpha.data.begin(), alpha.data.end(), [](const Rational &q) { return q >= 0; });
  out.alpha = std::move(alpha);
  return out;
}

inline std::vector<std::string> default_labels(int n, const std::string &prefix = "b") {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i)
    out.push_back(prefix + std::to_string(i));
  return out;
}

/// Row j is the coordinate sequence of a * b_j.
inline RationalMatrix mult_matrix(const SFCA &A, const AlgebraElement &a) {
  RationalMatrix m(A.n, std::vector<Rational>(A.n));
  for (int i = 0; i < A.n; ++i) {
    if (a[i].is_zero())
      continue;
    for (int j = 0; j < A.n; ++j)
      for (int k = 0; k < A.n; ++k)
        if (!A.alpha(i, j, k).is_zero())
          m[j][k] += a[i] * A.alpha(i, j, k);
  }
  return m;
}

inline AlgebraElement basis_element(const SFCA &A, int i) {
  AlgebraElement a(A.n);
  a[i] = 1;
  return a;
}

struct RowSums {
  std::vector<Rational> rows;
  Rational total;
};

/// s_i = trace M(b_i) = sum_j alpha(i,j,j).
inline RowSums row_sums_exact(const SFCA &A) {
  RowSums out;
  out.rows.assign(A.n, Rational(0));
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      out.rows[i] += A.alpha(i, j, j);
  for (const auto &r : out.rows)
    out.total += r;
  return out;
}

/// entries[i][j] = b_i(j). Exact tables carry both representations.
struct Table {
  std::vector<std::vector<Cyclotomic>> exact;
  std::vector<std::vector<std::complex<double>>> numeric;
  std::vector<std::string> column_meaning;
  int perron_column = 0;
  double residual = 0.0;

  bool is_exact() const { return !exact.empty(); }
  int size() const { return static_cast<int>(numeric.size()); }
};

struct NumericOptions {
  std::uint64_t seed = 1;
  double separation = 1e-8;
  double residual_tolerance = 1e-6;
  int max_retries = 32;
};

namespace detail {

inline Eigen::MatrixXd to_eigen(const RationalMatrix &m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = to_double(m[i][j]);
  return out;
}

inline bool complex_desc(std::complex<double> a, std::complex<double> b) {
  if (std::abs(a.real() - b.real()) > 1e-9)
    return a.real() > b.real();
  return a.imag() > b.imag() + 1e-9;
}

} // namespace detail

/// Diagonalizes a seeded random combination and reads every b_i(j) off the
/// common eigenvectors as Rayleigh quotients.
inline Table build_table_numeric(const SFCA &A, const NumericOptions &opt = {}) {
  const int n = A.n;
  std::vector<Eigen::MatrixXd> basis_mats;
  for (int i = 0; i < n; ++i)
    basis_mats.push_back(detail::to_eigen(mult_matrix(A, basis_element(A, i))));

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> draw(1, 1000);
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    AlgebraElement r(n);
    for (auto &c : r)
      c = Rational(draw(rng), 1000);
    Eigen::EigenSolver<Eigen::MatrixXd> es(detail::to_eigen(mult_matrix(A, r)));
    if (es.info() != Eigen::Success)
      continue;
    const Eigen::VectorXcd lambda = es.eigenvalues();
    bool separated = true;
    for (int a = 0; a < n && separated; ++a)
      for (int b = a + 1; b < n; ++b)
        if (std::abs(lambda(a) - lambda(b)) < opt.separation) {
          separated = false;
          break;
        }
    if (!separated)
      continue;

    Eigen::MatrixXcd vecs = es.eigenvectors();
    std::vector<bool> positive(n, false);
    for (int j = 0; j < n; ++j) {
      Eigen::Index idx = 0;
      vecs.col(j).cwiseAbs().maxCoeff(&idx);
      vecs.col(j) /= vecs(idx, j);
      bool pos = true;
      for (int k = 0; k < n; ++k)
        pos = pos && vecs(k, j).real() > 1e-9 && std::abs(vecs(k, j).imag()) < 1e-8;
      positive[j] = pos;
    }
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j)
      order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return detail::complex_desc(lambda(a), lambda(b)); });
    const auto perron = std::find_if(order.begin(), order.end(), [&](int j) { return positive[j]; });
    if (perron == order.end())
      throw Error(ErrorKind::NoPerronColumn, "no common eigenvector is entrywise positive");
    std::rotate(order.begin(), perron, perron + 1);

    Table t;
    t.numeric.assign(n, std::vector<std::complex<double>>(n));
    t.perron_column = 0;
    for (int c = 0; c < n; ++c) {
      const Eigen::VectorXcd x = vecs.col(order[c]);
      const std::complex<double> norm = x.squaredNorm();
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXcd mx = basis_mats[i].cast<std::complex<double>>() * x;
        const std::complex<double> value = x.dot(mx) / norm; // x^H M x / x^H x
        t.numeric[i][c] = value;
        t.residual = std::max(t.residual, (mx - value * x).cwiseAbs().maxCoeff());
      }
      t.column_meaning.push_back(c == 0 ? "perron" : "eigenvector " + std::to_string(c + 1));
    }
    return t;
  }
  throw Error(ErrorKind::DegenerateSpectrum,
              "eigenvalues not separated after " + std::to_string(opt.max_retries) + " retries");
}

/// Verifies exactly that each column of a supplied table is a common
/// eigenvector: sum_k alpha(i,j,k) X[k][c] = X[i][c] X[j][c].
inline Table build_table_exact(const SFCA &A, std::vector<std::vector<Cyclotomic>> known,
                               std::vector<std::string> column_meaning = {}) {
  const int n = A.n;
  if (static_cast<int>(known.size()) != n)
    throw Error(ErrorKind::ShapeMismatch, "table has " + std::to_string(known.size()) + " rows, algebra has " +
                                              std::to_string(n) + " basis elements");
  for (const auto &row : known)
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::ShapeMismatch, "table row of length " + std::to_string(row.size()));
  for (int i = 0; i < n; ++i)
    if (!known[i][0].is_rational() || known[i][0].rational_value() <= 0)
      throw Error(ErrorKind::NoPerronColumn, "column 1 is not strictly positive at row " + A.labels[i]);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        CyclotomicAccumulator acc(1);
        for (int k = 0; k < n; ++k)
          if (!A.alpha(i, j, k).is_zero())
            acc.add(known[k][c], A.alpha(i, j, k));
        if (acc.value() != known[i][c] * known[j][c])
          throw Error(ErrorKind::MismatchBeyondTolerance,
                      "column " + std::to_string(c + 1) + " is not an eigenvector of M(" + A.labels[i] +
                          ") with eigenvalue at row " + A.labels[j]);
      }
  Table t;
  t.numeric.assign(n, std::vector<std::complex<double>>(n));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      t.numeric[i][c] = known[i][c].to_complex();
  t.exact = std::move(known);
  if (column_meaning.empty())
    for (int c = 0; c < n; ++c)
      column_meaning.push_back("column " + std::to_string(c + 1));
  t.column_meaning = std::move(column_meaning);
  return t;
}

inline std::vector<Cyclotomic> column_sums_exact(const std::vector<std::vector<Cyclotomic>> &x) {
  const std::size_t cols = x.empty() ? 0 : x[0].size();
  std::vector<Cyclotomic> out;
  for (std::size_t c = 0; c < cols; ++c) {
    CyclotomicAccumulator acc(1);
    for (const auto &row : x)
      acc.add(row[c]);
    out.push_back(acc.value());
  }
  return out;
}

inline std::vector<std::complex<double>> column_sums_numeric(const Table &t) {
  std::vector<std::complex<double>> out(t.size());
  for (const auto &row : t.numeric)
    for (int c = 0; c < t.size(); ++c)
      out[c] += row[c];
  return out;
}

struct TraceCheck {
  bool ok = true;
  double max_defect = 0.0;
};

/// Row sums of the table against the exact traces of M(b_i).
inline TraceCheck trace_consistency(const SFCA &A, const Table &t, double tol = 1e-6) {
  const auto sums = row_sums_exact(A);
  TraceCheck out;
  for (int i = 0; i < A.n; ++i) {
    if (t.is_exact()) {
      CyclotomicAccumulator acc(1);
      for (const auto &v : t.exact[i])
        acc.add(v);
      out.ok = out.ok && acc.value() == Cyclotomic(sums.rows[i]);
    }
    std::complex<double> s = 0;
    for (const auto &v : t.numeric[i])
      s += v;
    out.max_defect = std::max(out.max_defect, std::abs(s - to_double(sums.rows[i])));
  }
  out.ok = out.ok && out.max_defect <= tol;
  return out;
}

struct ColumnMatch {
  std::vector<int> permutation; // numeric column c matches exact column permutation[c]
  double max_deviation = 0.0;
  bool ok = false;
};

/// Pairs numeric columns with exact columns (up to permutation).
inline ColumnMatch match_columns(const Table &numeric, const std::vector<std::vector<Cyclotomic>> &exact,
                                 double tol = 1e-6) {
  const int n = numeric.size();
  ColumnMatch out;
  if (static_cast<int>(exact.size()) != n)
    return out;
  std::vector<std::vector<std::complex<double>>> approx(n, std::vector<std::complex<double>>(n));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      approx[i][c] = exact[i][c].to_complex();
  std::vector<bool> used(n, false);
  for (int c = 0; c < n; ++c) {
    int best = -1;
    double best_dev = 0;
    for (int d = 0; d < n; ++d) {
      if (used[d])
        continue;
      double dev = 0;
      for (int i = 0; i < n; ++i)
        dev = std::max(dev, std::abs(numeric.numeric[i][c] - approx[i][d]));
      if (best < 0 || dev < best_dev) {
        best = d;
        best_dev = dev;
      }
    }
    used[best] = true;
    out.permutation.push_back(best);
    out.max_deviation = std::max(out.max_deviation, best_dev);
  }
  out.ok = out.max_deviation < tol;
  return out;
}

struct BoundsCertificate {
  std::vector<Rational> u, v;
  Rational u_min, u_max, v_sum;
  Rational lower, upper;
  Rational s;
  bool verdict = false;
};

/// Checks sum_i u_i b_i(j) = v_j against the table and derives
/// v_sum/u_max <= s <= v_sum/u_min.
inline BoundsCertificate bounds_certificate(const SFCA &A, const Table &t, std::vector<Rational> u,
                                            std::vector<Rational> v, double tol = 1e-6) {
  const int n = A.n;
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
    throw Error(ErrorKind::ShapeMismatch, "u and v must have length " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    if (u[i] <= 0)
      throw Error(ErrorKind::NonPositiveU, "u_" + std::to_string(i + 1) + " = " + to_string(u[i]));
  for (int j = 0; j < n; ++j)
    if (v[j] < 0)
      throw Error(ErrorKind::RelationViolated, "v_" + std::to_string(j + 1) + " = " + to_string(v[j]) + " < 0");
  for (int j = 0; j < n; ++j) {
    bool holds;
    if (t.is_exact()) {
      CyclotomicAccumulator acc(1);
      for (int i = 0; i < n; ++i)
        acc.add(t.exact[i][j], u[i]);
      holds = acc.value() == Cyclotomic(v[j]);
    } else {
      std::complex<double> s = 0;
      for (int i = 0; i < n; ++i)
        s += to_double(u[i]) * t.numeric[i][j];
      holds = std::abs(s - to_double(v[j])) <= tol;
    }
    if (!holds)
      throw Error(ErrorKind::RelationViolated, "sum_i u_i b_i(" + std::to_string(j + 1) + ") != v_" +
                                                   std::to_string(j + 1));
  }
  BoundsCertificate c;
  c.u_min = *std::min_element(u.begin(), u.end());
  c.u_max = *std::max_element(u.begin(), u.end());
  for (const auto &x : v)
    c.v_sum += x;
  c.lower = c.v_sum / c.u_max;
  c.upper = c.v_sum / c.u_min;
  c.s = row_sums_exact(A).total;
  c.verdict = c.lower <= c.s && c.s <= c.upper;
  c.u = std::move(u);
  c.v = std::move(v);
  return c;
}

struct ActionWitness {
  int row = 0;
  int column = 0;
  GaloisAutomorphism sigma;
};

struct GaloisColumnReport {
  std::vector<GaloisAutomorphism> sigmas;
  std::vector<std::optional<std::vector<int>>> permutations; // per sigma
  std::optional<ActionWitness> violation;
  std::vector<Cyclotomic> column_sums;
  std::vector<Rationality> rationality;

  bool action_ok() const { return !violation.has_value(); }
  bool all_columns_rational() const {
    return std::all_of(rationality.begin(), rationality.end(),
                       [](const Rationality &r) { return r.kind != RationalityKind::Irrational; });
  }
  bool all_columns_integral() const {
    return std::all_of(rationality.begin(), rationality.end(),
                       [](const Rationality &r) { return r.kind == RationalityKind::Integer; });
  }
  void throw_if_violated() const {
    if (violation)
      throw Error(ErrorKind::ActionViolated, "row " + std::to_string(violation->row + 1) + ", column " +
                                                 std::to_string(violation->column + 1) + ", sigma k=" +
                                                 std::to_string(violation->sigma.k));
  }
};

inline int table_conductor(const std::vector<std::vector<Cyclotomic>> &x) {
  int e = 1;
  for (const auto &row : x)
    for (const auto &v : row)
      e = std::lcm(e, v.order());
  return e;
}

namespace detail {

// First column at which sigma(row i) departs from the row agreeing with it longest.
inline int witness_column(const std::vector<std::vector<Cyclotomic>> &x, int i, const GaloisAutomorphism &s) {
  int best = 0;
  for (const auto &row : x) {
    int c = 0;
    while (c < static_cast<int>(row.size()) && s.apply(x[i][c]) == row[c])
      ++c;
    best = std::max(best, c);
  }
  return std::min(best, static_cast<int>(x[i].size()) - 1);
}


// Rows as ids of distinct values. sigma_k on a value depends only on k mod
// its conductor, and row matching is cached per distinct action on values,
// so large conductors with few distinct entries stay cheap.
class InternedRowAction {
public:
  explicit InternedRowAction(const std::vector<std::vector<Cyclotomic>> &x) {
    std::map<Cyclotomic, int, decltype(&canonical_less)> ids(&canonical_less);
    for (const auto &row : x) {
      std::vector<int> r;
      for (const auto &v : row) {
        auto [it, fresh] = ids.emplace(v, static_cast<int>(values_.size()));
        if (fresh)
          values_.push_back(v);
        r.push_back(it->second);
      }
      rows_.push_back(std::move(r));
    }
    ids_ = std::move(ids);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      row_index_.emplace(rows_[i], static_cast<int>(i));
    images_.resize(values_.size());
  }

  std::optional<std::vector<int>> permutation(long long k, int *missing_row) {
    std::vector<int> act(values_.size());
    for (std::size_t v = 0; v < values_.size(); ++v)
      act[v] = image(static_cast<int>(v), k);
    auto it = cache_.find(act);
    if (it == cache_.end())
      it = cache_.emplace(act, match(act)).first;
    const auto &[perm, missing] = it->second;
    if (!perm && missing_row)
      *missing_row = missing;
    return perm;
  }

private:
  using Result = std::pair<std::optional<std::vector<int>>, int>;

  // id of sigma_k(value), or -1 when the image is not a table value
  int image(int v, long long k) {
    const int n = values_[v].order();
    const long long r = ((k % n) + n) % n;
    auto &memo = images_[v];
    if (auto it = memo.find(r); it != memo.end())
      return it->second;
    const auto img = values_[v].galois(k);
    auto found = ids_.find(img);
    const int id = found == ids_.end() ? -1 : found->second;
    memo.emplace(r, id);
    return id;
  }

  Result match(const std::vector<int> &act) const {
    std::vector<int> perm;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::vector<int> img;
      for (int v : rows_[i])
        img.push_back(act[v]);
      auto it = row_index_.find(img);
      if (it == row_index_.end())
        return {std::nullopt, static_cast<int>(i)};
      perm.push_back(it->second);
    }
    return {perm, -1};
  }

  std::vector<Cyclotomic> values_;
  std::map<Cyclotomic, int, decltype(&canonical_less)> ids_{&canonical_less};
  std::vector<std::vector<int>> rows_;
  std::map<std::vector<int>, int> row_index_;
  std::vector<std::map<long long, int>> images_;
  std::map<std::vector<int>, Result> cache_;
};

} // namespace detail

/// For every sigma, checks that applying sigma to the rows permutes them
/// (against the claimed permutation when one is given), and classifies the
/// column sums.
inline GaloisColumnReport galois_column_test(const std::vector<std::vector<Cyclotomic>> &x,
                                             std::vector<GaloisAutomorphism> sigmas = {},
                                             const std::map<int, std::vector<int>> &row_action = {}) {
  GaloisColumnReport rep;
  if (sigmas.empty())
    sigmas = galois_group(table_conductor(x));
  detail::InternedRowAction action(x);
  for (const auto &s : sigmas) {
    std::optional<std::vector<int>> perm;
    if (auto it = row_action.find(s.k); it != row_action.end()) {
      const auto &claimed = it->second;
      perm = claimed;
      for (std::size_t i = 0; i < x.size() && perm; ++i)
        for (std::size_t c = 0; c < x[i].size(); ++c)
          if (s.apply(x[i][c]) != x[claimed[i]][c]) {
            if (!rep.violation)
              rep.violation = ActionWitness{static_cast<int>(i), static_cast<int>(c), s};
            perm.reset();
            break;
          }
    } else {
      int missing = -1;
      perm = action.permutation(s.k, &missing);
      if (!perm && !rep.violation)
        rep.violation = ActionWitness{missing, detail::witness_column(x, missing, s), s};
    }
    rep.permutations.push_back(std::move(perm));
  }
  rep.sigmas = std::move(sigmas);
  rep.column_sums = column_sums_exact(x);
  for (const auto &c : rep.column_sums)
    rep.rationality.push_back(rationality(c));
  return rep;
}

} // namespace chillag
