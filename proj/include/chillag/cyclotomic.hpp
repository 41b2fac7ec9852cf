#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// An element is stored in the field of its conductor (the smallest n with the
// element in Q(zeta_n), never n = 2 mod 4) on the Zumbroich basis: the roots
// zeta_n^e whose p-adic top digit of the p-component of e is nonzero for odd p
// and zero for p = 2. Subfield bases are subsets of field bases, so equal
// elements have identical (order, terms) and rationals have order 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chillag/arith.hpp"
#include "chillag/rational.hpp"

namespace chillag {

namespace detail {

struct FieldInfo {
  int n = 1;
  std::vector<int> primes;       // distinct primes of n
  std::vector<int> prime_powers; // p^nu exactly dividing n
  std::vector<int> weights;      // (n / p^nu)^{-1} mod p^nu

  int layer(int e, std::size_t t) const {
    const int pp = prime_powers[t];
    const auto part = static_cast<int>((static_cast<std::int64_t>(e) * weights[t]) % pp);
    return part / (pp / primes[t]);
  }
  bool excluded(int e, std::size_t t) const {
    const int l = layer(e, t);
    return primes[t] == 2 ? l != 0 : l == 0;
  }
};

inline const FieldInfo &field_info(int n) {
  static std::mutex mutex;
  static std::map<int, FieldInfo> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;
  FieldInfo info;
  info.n = n;
  for (int p : prime_divisors(n)) {
    int pp = 1;
    while (n % (pp * p) == 0)
      pp *= p;
    info.primes.push_back(p);
    info.prime_powers.push_back(pp);
    info.weights.push_back(pp == 1 ? 0 : static_cast<int>(inverse_mod(n / pp, pp)));
  }
  return cache.emplace(n, std::move(info)).first->second;
}

/// Rewrites a dense coefficient vector of Q(zeta_n) onto the Zumbroich basis.
inline void reduce_dense(std::vector<Rational> &c) {
  const int n = static_cast<int>(c.size());
  const FieldInfo &info = field_info(n);
  for (std::size_t t = 0; t < info.primes.size(); ++t) {
    const int p = info.primes[t];
    const int step = n / p;
    for (int e = 0; e < n; ++e) {
      if (c[e].is_zero() || !info.excluded(e, t))
        continue;
      Rational x = c[e];
      c[e] = 0;
      if (p == 2) {
        c[(e + step) % n] -= x;
      } else {
        for (int s = 1; s < p; ++s)
          c[(e + s * step) % n] -= x;
      }
    }
  }
}

} // namespace detail

class Cyclotomic;
Cyclotomic operator+(const Cyclotomic &x, const Cyclotomic &y);
Cyclotomic operator*(const Cyclotomic &x, const Cyclotomic &y);

class Cyclotomic {
public:
  using Term = std::pair<int, Rational>;

  Cyclotomic() = default;
  Cyclotomic(const Rational &q) {
    if (!q.is_zero())
      terms_.emplace_back(0, q);
  }
  Cyclotomic(long long v) : Cyclotomic(Rational(v)) {}
  Cyclotomic(int v) : Cyclotomic(Rational(v)) {}

  /// Sum of coeff * zeta_e^exponent, canonicalized.
  static Cyclotomic make(int e, std::span<const Term> terms) {
    if (e < 1)
      throw std::invalid_argument("cyclotomic order must be positive");
    std::vector<Rational> dense(e);
    for (const auto &[exp, coeff] : terms)
      dense[((exp % e) + e) % e] += coeff;
    return from_dense(std::move(dense));
  }

  /// zeta_n^k.
  static Cyclotomic root(int n, long long k) {
    const Term t{static_cast<int>(((k % n) + n) % n), Rational(1)};
    return make(n, std::span<const Term>(&t, 1));
  }

  /// Takes a dense coefficient vector over Q(zeta_n), n = size.
  static Cyclotomic from_dense(std::vector<Rational> dense) {
    detail::reduce_dense(dense);
    Cyclotomic out;
    out.order_ = static_cast<int>(dense.size());
    for (int e = 0; e < out.order_; ++e)
      if (!dense[e].is_zero())
        out.terms_.emplace_back(e, std::move(dense[e]));
    out.shrink_conductor();
    return out;
  }

  int order() const noexcept { return order_; }
  const std::vector<Term> &terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept { return order_ == 1; }
  bool is_integer() const { return is_rational() && is_integral(rational_value()); }

  /// Only meaningful when is_rational().
  Rational rational_value() const { return terms_.empty() ? Rational(0) : terms_.front().second; }

  /// Dense coefficients in Q(zeta_n) for a multiple n of order(); not reduced.
  std::vector<Rational> dense(int n) const {
    std::vector<Rational> out(n);
    const int scale = n / order_;
    for (const auto &[e, c] : terms_)
      out[e * scale] += c;
    return out;
  }

  /// Coordinates on the Zumbroich basis of Q(zeta_n), n a multiple of order().
  std::vector<Rational> coordinates(int n) const {
    auto c = dense(n);
    detail::reduce_dense(c);
    return c;
  }

  std::complex<double> to_complex() const {
    std::complex<double> z{0.0, 0.0};
    for (const auto &[e, c] : terms_) {
      const double angle = 2.0 * std::numbers::pi * e / order_;
      z += to_double(c) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return z;
  }

  /// Image under zeta_m -> zeta_m^k for any m; needs gcd(k, order()) = 1.
  Cyclotomic galois(long long k) const {
    if (order_ == 1)
      return *this;
    std::vector<Rational> out(order_);
    const long long kk = ((k % order_) + order_) % order_;
    for (const auto &[e, c] : terms_)
      out[static_cast<std::size_t>(kk * e % order_)] += c;
    return from_dense(std::move(out));
  }

  Cyclotomic conj() const { return galois(-1); }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto &t : out.terms_)
      t.second = -t.second;
    return out;
  }

  Cyclotomic &operator+=(const Cyclotomic &y) { return *this = *this + y; }
  Cyclotomic &operator-=(const Cyclotomic &y) { return *this = *this + (-y); }
  Cyclotomic &operator*=(const Cyclotomic &y) { return *this = *this * y; }

  friend bool operator==(const Cyclotomic &, const Cyclotomic &) = default;

  /// Total order on canonical forms; deterministic, not numeric.
  friend bool canonical_less(const Cyclotomic &x, const Cyclotomic &y) {
    if (x.order_ != y.order_)
      return x.order_ < y.order_;
    return x.terms_ < y.terms_;
  }

private:
  void shrink_conductor() {
    bool changed = true;
    while (changed && order_ > 1) {
      changed = false;
      if (terms_.empty()) {
        order_ = 1;
        break;
      }
      const auto &info = detail::field_info(order_);
      for (std::size_t t = 0; t < info.primes.size() && !changed; ++t) {
        const int p = info.primes[t];
        const int pp = info.prime_powers[t];
        if (p == 2 && pp == 2) {
          // Q(zeta_2m) = Q(zeta_m) for odd m; basis roots have even exponents.
          for (auto &term : terms_)
            term.first /= 2;
          order_ /= 2;
          changed = true;
        } else if (pp > p) {
          const bool all = std::all_of(terms_.begin(), terms_.end(),
                                       [p](const Term &term) { return term.first % p == 0; });
          if (all) {
            for (auto &term : terms_)
              term.first /= p;
            order_ /= p;
            changed = true;
          }
        } else {
          changed = shrink_prime(p, t);
        }
      }
    }
  }

  // p exactly divides order_, p odd. The element lies in Q(zeta_{n/p}) iff
  // every orbit {e + s n/p} carries one common coefficient on its p-1 basis
  // members; that coefficient, negated, is the coefficient of the excluded one.
  bool shrink_prime(int p, std::size_t t) {
    const auto &info = detail::field_info(order_);
    const int n = order_;
    const int step = n / p;
    std::map<int, std::pair<int, Rational>> orbits; // excluded exponent -> (count, coeff)
    for (const auto &[e, c] : terms_) {
      const int layer = info.layer(e, t);
      const int base = static_cast<int>((e + static_cast<std::int64_t>(p - layer) % p * step) % n);
      auto [it, inserted] = orbits.try_emplace(base, 0, c);
      if (!inserted && it->second.second != c)
        return false;
      ++it->second.first;
    }
    for (const auto &[base, entry] : orbits)
      if (entry.first != p - 1)
        return false;
    std::vector<Term> next;
    next.reserve(orbits.size());
    for (auto &[base, entry] : orbits)
      next.emplace_back(base / p, -entry.second);
    std::sort(next.begin(), next.end(),
              [](const Term &a, const Term &b) { return a.first < b.first; });
    terms_ = std::move(next);
    order_ = n / p;
    return true;
  }

  int order_ = 1;
  std::vector<Term> terms_;
};

bool canonical_less(const Cyclotomic &x, const Cyclotomic &y);

inline Cyclotomic operator+(const Cyclotomic &x, const Cyclotomic &y) {
  if (x.is_zero())
    return y;
  if (y.is_zero())
    return x;
  const int n = std::lcm(x.order(), y.order());
  auto dense = x.dense(n);
  const int scale = n / y.order();
  for (const auto &[e, c] : y.terms())
    dense[e * scale] += c;
  return Cyclotomic::from_dense(std::move(dense));
}

inline Cyclotomic operator-(const Cyclotomic &x, const Cyclotomic &y) { return x + (-y); }

inline Cyclotomic operator*(const Cyclotomic &x, const Cyclotomic &y) {
  if (x.is_zero() || y.is_zero())
    return {};
  if (x.is_rational() || y.is_rational()) {
    const Cyclotomic &q = x.is_rational() ? x : y;
    Cyclotomic out = x.is_rational() ? y : x;
    std::vector<Rational> dense(out.order());
    for (const auto &[e, c] : out.terms())
      dense[e] = c * q.rational_value();
    return Cyclotomic::from_dense(std::move(dense));
  }
  const int n = std::lcm(x.order(), y.order());
  const int sx = n / x.order(), sy = n / y.order();
  std::vector<Rational> dense(n);
  for (const auto &[ex, cx] : x.terms())
    for (const auto &[ey, cy] : y.terms())
      dense[(ex * sx + ey * sy) % n] += cx * cy;
  return Cyclotomic::from_dense(std::move(dense));
}

/// Accumulates many products in one dense buffer; one reduction at the end.
class CyclotomicAccumulator {
public:
  explicit CyclotomicAccumulator(int n) : dense_(n) {}

  int order() const { return static_cast<int>(dense_.size()); }

  void add(const Cyclotomic &x, const Rational &scale = Rational(1)) {
    grow(x.order());
    const int n = order();
    const int s = n / x.order();
    for (const auto &[e, c] : x.terms())
      dense_[e * s] += c * scale;
  }

  void add_product(const Cyclotomic &x, const Cyclotomic &y, const Rational &scale = Rational(1)) {
    grow(std::lcm(x.order(), y.order()));
    const int n = order();
    const int sx = n / x.order(), sy = n / y.order();
    for (const auto &[ex, cx] : x.terms())
      for (const auto &[ey, cy] : y.terms())
        dense_[(ex * sx + ey * sy) % n] += cx * cy * scale;
  }

  Cyclotomic value() const { return Cyclotomic::from_dense(dense_); }

private:
  void grow(int m) {
    const int n = order();
    if (n % m == 0)
      return;
    const int target = std::lcm(n, m);
    std::vector<Rational> next(target);
    const int s = target / n;
    for (int e = 0; e < n; ++e)
      next[e * s] = std::move(dense_[e]);
    dense_ = std::move(next);
  }

  std::vector<Rational> dense_;
};

/// zeta_order -> zeta_order^k with gcd(k, order) = 1.
struct GaloisAutomorphism {
  int order = 1;
  int k = 1;

  Cyclotomic apply(const Cyclotomic &x) const {
    if (order % x.order() != 0)
      throw std::invalid_argument("automorphism order must be a multiple of the element order");
    return x.galois(k);
  }
};

/// Every automorphism of Q(zeta_e), k ascending.
inline std::vector<GaloisAutomorphism> galois_group(int e) {
  if (e <= 2)
    return {{std::max(e, 1), 1}};
  std::vector<GaloisAutomorphism> out;
  for (int k = 1; k < e; ++k)
    if (std::gcd(k, e) == 1)
      out.push_back({e, k});
  return out;
}

inline Cyclotomic galois_apply(const GaloisAutomorphism &sigma, const Cyclotomic &x) {
  return sigma.apply(x);
}

enum class RationalityKind { Integer, NonIntegerRational, Irrational };

struct Rationality {
  RationalityKind kind = RationalityKind::Irrational;
  std::optional<Rational> value;

  bool rational() const { return kind != RationalityKind::Irrational; }
};

inline Rationality rationality(const Cyclotomic &x) {
  if (!x.is_rational())
    return {RationalityKind::Irrational, std::nullopt};
  Rational v = x.rational_value();
  return {is_integral(v) ? RationalityKind::Integer : RationalityKind::NonIntegerRational, v};
}

inline std::string_view to_string(RationalityKind k) {
  switch (k) {
  case RationalityKind::Integer: return "Integer";
  case RationalityKind::NonIntegerRational: return "NonIntegerRational";
  case RationalityKind::Irrational: return "Irrational";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Literal grammar: sums of terms `c`, `c*E(n,k)`, `E(n,k)`, `E(n)`, with c an
// integer or p/q. Printing emits canonical basis terms, exponent 0 as c.

inline std::string to_string(const Cyclotomic &x) {
  if (x.is_zero())
    return "0";
  std::string out;
  for (const auto &[e, c] : x.terms()) {
    std::string term;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (e == 0) {
      term = to_string(mag);
    } else {
      const std::string atom = "E(" + std::to_string(x.order()) + "," + std::to_string(e) + ")";
      term = mag == 1 ? atom : to_string(mag) + "*" + atom;
    }
    if (negative)
      out += "-";
    else if (!out.empty())
      out += "+";
    out += term;
  }
  return out;
}

namespace detail {

class LiteralParser {
public:
  LiteralParser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

  Cyclotomic parse() {
    skip_ws();
    if (pos_ == text_.size())
      fail("empty literal");
    CyclotomicAccumulator acc(1);
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == text_.size())
        break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      parse_term(acc, sign);
      first = false;
    }
    return acc.value();
  }

private:
  void parse_term(CyclotomicAccumulator &acc, int sign) {
    Rational coeff(sign);
    if (peek() == 'E') {
      acc.add(parse_atom(), coeff);
      return;
    }
    coeff *= parse_number();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      acc.add(parse_atom(), coeff);
    } else {
      acc.add(Cyclotomic(coeff));
    }
  }

  Cyclotomic parse_atom() {
    expect('E');
    skip_ws();
    expect('(');
    const long long n = parse_int();
    long long k = 1;
    skip_ws();
    if (peek() == ',') {
      ++pos_;
      k = parse_signed_int();
    }
    skip_ws();
    expect(')');
    if (n < 1 || n > 1'000'000)
      fail("root order out of range");
    return Cyclotomic::root(static_cast<int>(n), k);
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected number or E(n,k)");
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
    if (peek() == '/') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected denominator");
      while (std::isdigit(static_cast<unsigned char>(peek())))
        ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const Error &) {
      pos_ = start;
      fail("bad rational");
    }
  }

  long long parse_signed_int() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    const long long v = parse_int();
    return neg ? -v : v;
  }

  long long parse_int() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000'000)
        fail("integer too large");
      ++pos_;
    }
    return v;
  }

  void expect(char c) {
    if (peek() != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw Error(ErrorKind::ParseError, "column " + std::to_string(offset_ + pos_ + 1) + ": " + msg);
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the `E(n,k)` literal grammar; ParseError carries the 1-based column,
/// counted from column_offset when the literal sits inside a longer line.
inline Cyclotomic parse_cyclotomic(std::string_view text, std::size_t column_offset = 0) {
  return detail::LiteralParser(text, column_offset).parse();
}

inline std::ostream &operator<<(std::ostream &os, const Cyclotomic &x) { return os << to_string(x); }

} // namespace chillag
