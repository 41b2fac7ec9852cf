// Generates the modular character table fixtures.
//
// Irreducible modules in defining characteristic come from Steinberg's tensor
// product theorem: twisted tensor products of the restricted modules
// Sym^a(V), 0 <= a < p, for SL(2,q), and of the natural 4-dimensional module
// for Sz(q). Brauer characters lift each eigenvalue gamma^j (gamma a fixed
// primitive element of the splitting field) to E(N, j).
//
// For SL(2,16) and PSL(2,27) the group is built as a permutation group on the
// projective line and each class representative is mapped back to a matrix,
// so the table is checked against the ordinary table computed by the library:
// every restricted ordinary character must decompose with nonnegative integer
// coefficients. Every table is also checked for the Steinberg character
// taking values +-1 away from the identity, and for linear independence.
//
// usage: make_fixtures [output-directory]

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "chillag/character_table.hpp"
#include "chillag/linalg.hpp"
#include "chillag/pi_partial.hpp"
#include "chillag/table_file.hpp"

using namespace chillag;

namespace {

/// GF(p^n) with elements encoded as base-p digit strings of polynomial
/// coefficients, and exp/log tables for a primitive element.
class GaloisField {
public:
  GaloisField(int p, int n) : p_(p), n_(n), q_(1) {
    for (int i = 0; i < n; ++i)
      q_ *= p;
    for (int f = 0; f < q_; ++f) // low coefficients of a monic degree-n modulus
      if (f % p != 0 && try_modulus(f))
        return;
    throw std::runtime_error("no primitive polynomial");
  }

  int size() const { return q_; }
  int characteristic() const { return p_; }

  int add(int a, int b) const {
    int out = 0, scale = 1;
    for (int i = 0; i < n_; ++i, a /= p_, b /= p_, scale *= p_)
      out += ((a % p_ + b % p_) % p_) * scale;
    return out;
  }
  int neg(int a) const {
    int out = 0, scale = 1;
    for (int i = 0; i < n_; ++i, a /= p_, scale *= p_)
      out += ((p_ - a % p_) % p_) * scale;
    return out;
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const {
    if (a == 0 || b == 0)
      return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  int inv(int a) const { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }
  int div(int a, int b) const { return mul(a, inv(b)); }
  int power_of_generator(long long j) const { return exp_[((j % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }
  int log(int a) const { return log_[a]; }

private:
  bool try_modulus(int low) {
    // multiply by x modulo x^n - low(x)... written as x^n = -low(x)
    std::vector<int> minus_low(n_);
    for (int i = 0, f = low; i < n_; ++i, f /= p_)
      minus_low[i] = (p_ - f % p_) % p_;
    std::vector<int> exp_table;
    std::vector<int> cur(n_, 0);
    cur[0] = 1;
    auto encode = [&](const std::vector<int> &v) {
      int out = 0;
      for (int i = n_ - 1; i >= 0; --i)
        out = out * p_ + v[i];
      return out;
    };
    for (int j = 0; j < q_ - 1; ++j) {
      const int e = encode(cur);
      if (j > 0 && e == 1)
        return false;
      exp_table.push_back(e);
      const int top = cur[n_ - 1];
      for (int i = n_ - 1; i > 0; --i)
        cur[i] = cur[i - 1];
      cur[0] = 0;
      for (int i = 0; i < n_; ++i)
        cur[i] = (cur[i] + top * minus_low[i]) % p_;
    }
    if (encode(cur) != 1)
      return false;
    exp_ = exp_table;
    log_.assign(q_, -1);
    for (int j = 0; j < q_ - 1; ++j)
      log_[exp_[j]] = j;
    return std::count(log_.begin() + 1, log_.end(), -1) == 0;
  }

  int p_, n_, q_;
  std::vector<int> exp_, log_;
};

struct Matrix2 {
  int a, b, c, d;
};

Cyclotomic product(const std::vector<Cyclotomic> &factors) {
  Cyclotomic out(1);
  for (const auto &f : factors)
    out *= f;
  return out;
}

/// Sum over the weights of a module: sum_e E(N, j*e).
Cyclotomic weight_sum(int N, long long j, const std::vector<long long> &weights) {
  CyclotomicAccumulator acc(N);
  for (long long e : weights)
    acc.add(Cyclotomic::root(N, j * e));
  return acc.value();
}

struct Fixture {
  TableFile table;
  std::vector<std::vector<Cyclotomic>> pims; // only for SL(2,16)
};

void check(bool ok, const std::string &what) {
  if (!ok)
    throw std::runtime_error("check failed: " + what);
  std::cerr << "  ok: " << what << "\n";
}

/// Steinberg character values (the last row in a tensor-product family) must
/// be +-1 on nonidentity semisimple classes.
void check_steinberg(const std::vector<Cyclotomic> &st, std::int64_t p_part) {
  check(st[0] == Cyclotomic(static_cast<long long>(p_part)), "Steinberg degree is the p-part of the order");
  bool ok = true;
  for (std::size_t c = 1; c < st.size(); ++c)
    ok = ok && (st[c] == Cyclotomic(1) || st[c] == Cyclotomic(-1));
  check(ok, "Steinberg character is +-1 off the identity");
}

/// Rank over C, from a full-pivot LU of the numeric values.
std::size_t complex_rank(const std::vector<std::vector<Cyclotomic>> &rows) {
  Eigen::MatrixXcd m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(i, j) = rows[i][j].to_complex();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(lu.rank());
}

void sort_rows(std::vector<std::vector<Cyclotomic>> &rows) {
  std::sort(rows.begin(), rows.end(), row_precedes);
}

/// SL(2,q) = PSL(2,q) for q even, PSL(2,q) for q = 3 mod 4; acts on the
/// projective line over GF(q), realized inside GF(q^2).
Fixture psl2_fixture(int p, int k, const std::string &name, bool with_pims) {
  std::cerr << name << "\n";
  const GaloisField big(p, 2 * k);
  const int Q = big.size();
  int q = 1;
  for (int i = 0; i < k; ++i)
    q *= p;
  std::vector<int> fq{0};
  for (int j = 0; j < q - 1; ++j)
    fq.push_back(big.power_of_generator(static_cast<long long>(j) * (q + 1)));
  std::vector<int> point(Q, -1);
  for (int i = 0; i < q; ++i)
    point[fq[i]] = i;
  const int infinity = q;

  auto act = [&](const Matrix2 &m) {
    std::vector<int> images(q + 1);
    for (int i = 0; i <= q; ++i) {
      if (i == infinity) {
        images[i] = m.c == 0 ? infinity : point[big.div(m.a, m.c)];
        continue;
      }
      const int x = fq[i];
      const int num = big.add(big.mul(m.a, x), m.b), den = big.add(big.mul(m.c, x), m.d);
      images[i] = den == 0 ? infinity : point[big.div(num, den)];
    }
    return Permutation(std::move(images));
  };

  std::unordered_map<Permutation, Matrix2, PermutationHash> matrix_of;
  for (int a : fq)
    for (int b : fq)
      for (int c : fq)
        for (int d : fq)
          if (big.sub(big.mul(a, d), big.mul(b, c)) == 1)
            matrix_of.emplace(act({a, b, c, d}), Matrix2{a, b, c, d});

  const int omega = fq[2]; // gamma^(q+1), a generator of GF(q)^*
  const int one = 1;
  std::vector<Permutation> gens{act({one, one, 0, one}), act({0, big.neg(one), one, 0}),
                                act({omega, 0, 0, big.inv(omega)})};
  const PermGroup g = PermGroup::generate(gens, 100000);
  check(g.order() == matrix_of.size(), "group order " + std::to_string(g.order()));

  const PrimeSet pi = complement_primes(static_cast<std::int64_t>(g.order()), {p});
  const auto classes = pi_classes(g, pi);

  // eigenvalue exponent j (x = gamma^j) of a representative matrix per class
  std::vector<long long> exponent;
  for (int c : classes) {
    const Matrix2 &m = matrix_of.at(g.element(g.classes()[c].representative));
    const int tr = big.add(m.a, m.d);
    int root = -1;
    for (int x = 1; x < Q && root < 0; ++x)
      if (big.add(big.sub(big.mul(x, x), big.mul(tr, x)), 1) == 0)
        root = x;
    if (root < 0)
      throw std::runtime_error("no eigenvalue for class " + std::to_string(c + 1));
    exponent.push_back(big.log(root));
  }

  // modules: digits a_i in [0, p), twisted by p^i; for odd p keep those on
  // which -1 acts trivially (even digit sum)
  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<int> digits(k, 0);
  std::vector<Cyclotomic> steinberg;
  for (int code = 0;; ++code) {
    int sum = 0;
    for (int d : digits)
      sum += d;
    if (p == 2 || sum % 2 == 0) {
      std::vector<Cyclotomic> row;
      for (long long j : exponent) {
        std::vector<Cyclotomic> factors;
        long long twist = 1;
        for (int i = 0; i < k; ++i, twist *= p) {
          std::vector<long long> weights;
          for (int t = 0; t <= digits[i]; ++t)
            weights.push_back(twist * (digits[i] - 2 * t));
          factors.push_back(weight_sum(Q - 1, j, weights));
        }
        row.push_back(product(factors));
      }
      if (std::all_of(digits.begin(), digits.end(), [&](int d) { return d == p - 1; }))
        steinberg = row;
      rows.push_back(std::move(row));
    }
    int i = 0;
    while (i < k && digits[i] == p - 1)
      digits[i++] = 0;
    if (i == k)
      break;
    ++digits[i];
  }
  sort_rows(rows);
  check(rows.size() == classes.size(), std::to_string(rows.size()) + " irreducibles for " +
                                           std::to_string(classes.size()) + " p-regular classes");
  check_steinberg(steinberg, static_cast<std::int64_t>(g.order()) / pi_part(static_cast<std::int64_t>(g.order()), pi));
  check(complex_rank(rows) == rows.size(), "rows linearly independent");

  std::cerr << "  ordinary table of order " << g.order() << " ...\n";
  const CharacterTable t = character_table(g);
  check(check_orthogonality(t).ok(), "ordinary table orthogonality");
  IpiSet ipi;
  ipi.pi = pi;
  ipi.class_ids = classes;
  for (const auto &row : rows)
    ipi.irreducibles.push_back(PartialCharacter{row, row[0].rational_value().convert_to<std::int64_t>(), {}});
  const auto dm = decomposition_matrix(t, ipi); // throws unless nonnegative integral
  check(true, "decomposition matrix nonnegative integral");
  bool columns_hit = true;
  for (std::size_t phi = 0; phi < ipi.size(); ++phi) {
    bool hit = false;
    for (const auto &row : dm.d)
      hit = hit || row[phi] > 0;
    columns_hit = columns_hit && hit;
  }
  check(columns_hit, "every Brauer character occurs in some restriction");
  const auto P = pims(t, ipi, dm); // throws unless the PIMs vanish off p-regular classes

  Fixture fx;
  TableFile &tf = fx.table;
  tf.name = name;
  tf.kind = TableKind::Brauer;
  tf.group_order = static_cast<std::int64_t>(g.order());
  tf.prime = p;
  tf.pi = pi;
  tf.classes = static_cast<int>(classes.size());
  for (int c : classes) {
    tf.class_orders.push_back(g.classes()[c].element_order);
    tf.class_sizes.push_back(static_cast<std::int64_t>(g.classes()[c].size));
  }
  tf.rows = rows;
  if (with_pims)
    fx.pims = P.restricted(classes);
  return fx;
}

/// Sz(32): q = 2^5, r = 4. Natural module weights on the three cyclic tori:
/// order q-1: lambda^(r+1), lambda^r, lambda^-r, lambda^-(r+1);
/// orders q+-2r+1: zeta, zeta^q, zeta^-1, zeta^-q.
Fixture sz32_fixture() {
  std::cerr << "Sz(32)\n";
  const int q = 32, r = 4, twists = 5;
  const std::int64_t order = static_cast<std::int64_t>(q) * q * (q * q + 1) * (q - 1);
  struct ClassInfo {
    int torus;
    long long k;
    std::vector<long long> weights;
  };
  std::vector<ClassInfo> classes{{1, 0, {0, 0, 0, 0}}};
  for (long long k = 1; k <= (q - 2) / 2; ++k)
    classes.push_back({q - 1, k, {r + 1, r, -r, -(r + 1)}});
  for (int m : {q + 2 * r + 1, q - 2 * r + 1}) {
    std::vector<char> seen(m, 0);
    for (long long k = 1; k < m; ++k) {
      if (seen[k])
        continue;
      for (long long x = k; !seen[x]; x = x * q % m)
        seen[x] = 1;
      classes.push_back({m, k, {1, q, -1, -q}});
    }
  }
  check(classes.size() == static_cast<std::size_t>(1) << twists, std::to_string(classes.size()) + " 2-regular classes");

  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<Cyclotomic> steinberg;
  for (int subset = 0; subset < (1 << twists); ++subset) {
    std::vector<Cyclotomic> row;
    for (const auto &c : classes) {
      std::vector<Cyclotomic> factors;
      for (int i = 0; i < twists; ++i) {
        if (!(subset >> i & 1))
          continue;
        std::vector<long long> w;
        for (long long e : c.weights)
          w.push_back(e << i);
        factors.push_back(weight_sum(c.torus, c.k, w));
      }
      row.push_back(product(factors));
    }
    if (subset == (1 << twists) - 1)
      steinberg = row;
    rows.push_back(std::move(row));
  }
  sort_rows(rows);
  check_steinberg(steinberg, static_cast<std::int64_t>(q) * q);
  check(complex_rank(rows) == rows.size(), "rows linearly independent");

  Fixture fx;
  TableFile &tf = fx.table;
  tf.name = "Sz(32) mod 2";
  tf.kind = TableKind::Brauer;
  tf.group_order = order;
  tf.prime = 2;
  tf.pi = complement_primes(order, {2});
  tf.classes = static_cast<int>(classes.size());
  for (const auto &c : classes) {
    const int o = c.torus == 1 ? 1 : static_cast<int>(c.torus / std::gcd<long long>(c.torus, c.k));
    tf.class_orders.push_back(o);
    tf.class_sizes.push_back(c.torus == 1 ? 1 : order / c.torus);
  }
  tf.rows = rows;
  return fx;
}

void write(const std::filesystem::path &path, const TableFile &t) {
  const std::string text = format_table_file(t);
  const TableFile back = parse_table_file(text, path.string());
  check(back.rows == t.rows, "round trip " + path.filename().string());
  std::ofstream(path, std::ios::binary) << text;
}

} // namespace

int main(int argc, char **argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  try {
    const std::string method = "irreducible modules from Steinberg's tensor product theorem";
    const std::string lift = "eigenvalues gamma^j lifted to E(N,j), gamma a fixed primitive element of GF(";

    auto f16 = psl2_fixture(2, 4, "PSL(2,16) mod 2", true);
    f16.table.comments = {"2-modular Brauer characters of PSL(2,16) = SL(2,16)", "generated by tools/make_fixtures: " + method,
                          lift + "256), N = 255",
                          "checked: restrictions of the ordinary table decompose with nonnegative integer coefficients"};
    write(dir / "psl2_16_mod2.tbl", f16.table);

    TableFile pim = f16.table;
    pim.kind = TableKind::Pim;
    pim.rows = f16.pims;
    pim.comments = {"2-projective indecomposable characters of PSL(2,16) on the 2-regular classes",
                    "generated by tools/make_fixtures: Phi = sum_chi d(chi,phi) chi from the decomposition matrix of "
                    "psl2_16_mod2.tbl"};
    write(dir / "psl2_16_mod2_pim.tbl", pim);

    auto f27 = psl2_fixture(3, 3, "PSL(2,27) mod 3", false);
    f27.table.comments = {"3-modular Brauer characters of PSL(2,27)",
                          "generated by tools/make_fixtures: " + method + ", modules with even digit sum",
                          lift + "729), N = 728",
                          "checked: restrictions of the ordinary table decompose with nonnegative integer coefficients"};
    write(dir / "psl2_27_mod3.tbl", f27.table);

    auto sz = sz32_fixture();
    sz.table.comments = {"2-modular Brauer characters of the Suzuki group Sz(32)",
                         "generated by tools/make_fixtures: twisted tensor products of the natural 4-dimensional module",
                         "torus eigenvalues lifted to E(31,.), E(41,.), E(25,.) through one primitive root per torus",
                         "checked: Steinberg character +-1 off the identity, rows linearly independent"};
    write(dir / "sz32_mod2.tbl", sz.table);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
