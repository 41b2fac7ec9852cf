#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "chillag/arith.hpp"
#include "chillag/errors.hpp"
#include "chillag/permutation.hpp"

namespace chillag {

inline constexpr std::size_t kDefaultOrderCap = 5000;

/// The order cap, overridable through CHILLAG_CAP.
inline std::size_t order_cap() {
  if (const char *env = std::getenv("CHILLAG_CAP")) {
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
  }
  return kDefaultOrderCap;
}

struct ConjClass {
  int id = 0;
  int representative = 0; // smallest member id
  std::vector<int> members;
  std::size_t size = 0;
  int element_order = 1;
};

/// A finite permutation group with every element enumerated. Element 0 is
/// the identity; class 0 is the identity class. Immutable once generated.
class PermGroup {
public:
  static PermGroup generate(std::vector<Permutation> generators, std::size_t cap = kDefaultOrderCap) {
    if (generators.empty())
      throw std::invalid_argument("generator list must be nonempty");
    int degree = 1;
    for (const auto &g : generators)
      degree = std::max(degree, g.degree());
    for (auto &g : generators)
      g = g.extended(degree);

    PermGroup group;
    group.degree_ = degree;
    group.generators_ = std::move(generators);
    group.add_element(Permutation::identity(degree));
    for (std::size_t idx = 0; idx < group.elements_.size(); ++idx) {
      for (const auto &g : group.generators_) {
        Permutation next = group.elements_[idx] * g;
        if (!group.index_.contains(next)) {
          if (group.elements_.size() >= cap)
            throw Error(ErrorKind::CapExceeded,
                        "group order exceeds cap " + std::to_string(cap));
          group.add_element(std::move(next));
        }
      }
    }
    group.finish();
    return group;
  }

  int degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  int exponent() const noexcept { return exponent_; }
  const std::vector<Permutation> &generators() const noexcept { return generators_; }
  const std::vector<Permutation> &elements() const noexcept { return elements_; }
  const Permutation &element(int id) const { return elements_[id]; }

  std::optional<int> find(const Permutation &p) const {
    if (p.degree() != degree_)
      return std::nullopt;
    auto it = index_.find(p);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  int multiply(int a, int b) const { return index_.at(elements_[a] * elements_[b]); }
  int inverse(int a) const { return inverses_[a]; }
  int element_order(int a) const { return orders_[a]; }

  int power(int a, long long m) const {
    const long long ord = orders_[a];
    long long e = ((m % ord) + ord) % ord;
    int result = 0;
    int base = a;
    while (e > 0) {
      if (e & 1)
        result = multiply(result, base);
      base = multiply(base, base);
      e >>= 1;
    }
    return result;
  }

  /// g^-1 x g
  int conjugate(int x, int g) const { return multiply(multiply(inverses_[g], x), g); }

  bool commute(int a, int b) const { return multiply(a, b) == multiply(b, a); }

  const std::vector<ConjClass> &classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  int class_of(int element) const { return class_of_[element]; }

  bool is_pi_element(int element, const PrimeSet &pi) const {
    return is_pi_number(orders_[element], pi);
  }

  /// Primes dividing |G|.
  PrimeSet primes() const {
    const auto ps = prime_divisors(static_cast<std::int64_t>(order()));
    return PrimeSet(ps.begin(), ps.end());
  }

private:
  void add_element(Permutation p) {
    index_.emplace(p, static_cast<int>(elements_.size()));
    elements_.push_back(std::move(p));
  }

  static int cycle_order(const Permutation &p) {
    std::vector<char> seen(p.degree(), 0);
    long long ord = 1;
    for (int s = 0; s < p.degree(); ++s) {
      if (seen[s])
        continue;
      int len = 0;
      for (int x = s; !seen[x]; x = p[x]) {
        seen[x] = 1;
        ++len;
      }
      ord = std::lcm(ord, static_cast<long long>(len));
    }
    return static_cast<int>(ord);
  }

  void finish() {
    const int n = static_cast<int>(elements_.size());
    inverses_.resize(n);
    orders_.resize(n);
    exponent_ = 1;
    for (int i = 0; i < n; ++i) {
      inverses_[i] = index_.at(elements_[i].inverse());
      orders_[i] = cycle_order(elements_[i]);
      exponent_ = std::lcm(exponent_, orders_[i]);
    }

    std::vector<int> raw_class(n, -1);
    std::vector<ConjClass> raw;
    for (int x = 0; x < n; ++x) {
      if (raw_class[x] >= 0)
        continue;
      ConjClass cls;
      cls.members.push_back(x);
      raw_class[x] = static_cast<int>(raw.size());
      for (std::size_t k = 0; k < cls.members.size(); ++k) {
        const Permutation &y = elements_[cls.members[k]];
        for (const auto &g : generators_) {
          const int z = index_.at(g.inverse() * y * g);
          if (raw_class[z] < 0) {
            raw_class[z] = raw_class[x];
            cls.members.push_back(z);
          }
        }
      }
      std::sort(cls.members.begin(), cls.members.end());
      cls.representative = cls.members.front();
      cls.size = cls.members.size();
      cls.element_order = orders_[x];
      raw.push_back(std::move(cls));
    }
    std::sort(raw.begin(), raw.end(), [](const ConjClass &a, const ConjClass &b) {
      return std::tuple(a.element_order, a.size, a.representative) <
             std::tuple(b.element_order, b.size, b.representative);
    });
    class_of_.assign(n, -1);
    for (std::size_t c = 0; c < raw.size(); ++c) {
      raw[c].id = static_cast<int>(c);
      for (int m : raw[c].members)
        class_of_[m] = static_cast<int>(c);
    }
    classes_ = std::move(raw);
  }

  int degree_ = 0;
  int exponent_ = 1;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, int, PermutationHash> index_;
  std::vector<int> inverses_;
  std::vector<int> orders_;
  std::vector<ConjClass> classes_;
  std::vector<int> class_of_;
};

inline PermGroup group_from_generators(std::vector<Permutation> gens,
                                       std::size_t cap = kDefaultOrderCap) {
  return PermGroup::generate(std::move(gens), cap);
}

inline const std::vector<ConjClass> &conjugacy_classes(const PermGroup &g) { return g.classes(); }

/// a(i,j,k) = #{(x,y) in K_i x K_j : xy = z} for a fixed z in K_k, so that
/// K_i K_j = sum_k a(i,j,k) K_k in the class algebra.
struct ClassTensor {
  int n = 0;
  std::vector<std::int64_t> a;

  std::int64_t operator()(int i, int j, int k) const {
    return a[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
  std::int64_t &at(int i, int j, int k) { return a[(static_cast<std::size_t>(i) * n + j) * n + k]; }
};

inline ClassTensor class_structure_constants(const PermGroup &g) {
  ClassTensor t;
  t.n = static_cast<int>(g.class_count());
  t.a.assign(static_cast<std::size_t>(t.n) * t.n * t.n, 0);
  for (int k = 0; k < t.n; ++k) {
    const int z = g.classes()[k].representative;
    for (int x = 0; x < static_cast<int>(g.order()); ++x) {
      const int y = g.multiply(g.inverse(x), z);
      ++t.at(g.class_of(x), g.class_of(y), k);
    }
  }
  return t;
}

/// class of g -> class of g^m.
inline std::vector<int> power_map(const PermGroup &g, long long m) {
  std::vector<int> out;
  out.reserve(g.class_count());
  for (const auto &c : g.classes())
    out.push_back(g.class_of(g.power(c.representative, m)));
  return out;
}

/// Classes of pi-elements, in class order (identity first).
inline std::vector<int> pi_classes(const PermGroup &g, const PrimeSet &pi) {
  std::vector<int> out;
  for (const auto &c : g.classes())
    if (is_pi_number(c.element_order, pi))
      out.push_back(c.id);
  return out;
}

inline std::vector<std::int64_t> class_sizes(const PermGroup &g) {
  std::vector<std::int64_t> out;
  for (const auto &c : g.classes())
    out.push_back(static_cast<std::int64_t>(c.size));
  return out;
}

} // namespace chillag
