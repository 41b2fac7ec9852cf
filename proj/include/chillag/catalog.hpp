#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "chillag/perm_group.hpp"

namespace chillag {

namespace detail {

inline Permutation cycle_perm(int degree, const std::vector<int> &cycle) {
  std::vector<int> images(degree);
  for (int i = 0; i < degree; ++i)
    images[i] = i;
  for (std::size_t c = 0; c < cycle.size(); ++c)
    images[cycle[c]] = cycle[(c + 1) % cycle.size()];
  return Permutation(std::move(images));
}

// Right-regular representation of Q8: elements (sign, unit) with units
// 1, i, j, k encoded 0..3 and index 4*sign + unit.
inline std::vector<Permutation> quaternion_generators() {
  // unit products: table[a][b] = (sign, unit) of e_a * e_b
  static constexpr std::array<std::array<std::array<int, 2>, 4>, 4> table{{
      {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
      {{{0, 1}, {1, 0}, {0, 3}, {1, 2}}},
      {{{0, 2}, {1, 3}, {1, 0}, {0, 1}}},
      {{{0, 3}, {0, 2}, {1, 1}, {1, 0}}},
  }};
  auto right_mult = [&](int unit) {
    std::vector<int> images(8);
    for (int sign = 0; sign < 2; ++sign)
      for (int a = 0; a < 4; ++a) {
        const auto [s, u] = table[a][unit];
        images[4 * sign + a] = 4 * (sign ^ s) + u;
      }
    return Permutation(std::move(images));
  };
  return {right_mult(1), right_mult(2)};
}

// SL(2,3) acting on the 8 nonzero vectors of F_3^2 (row vectors, v -> vM).
inline std::vector<Permutation> sl23_generators() {
  std::vector<std::array<int, 2>> vectors;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a || b)
        vectors.push_back({a, b});
  auto index = [&](std::array<int, 2> v) {
    for (std::size_t i = 0; i < vectors.size(); ++i)
      if (vectors[i] == v)
        return static_cast<int>(i);
    return -1;
  };
  auto act = [&](std::array<std::array<int, 2>, 2> m) {
    std::vector<int> images;
    for (const auto &v : vectors)
      images.push_back(index({(v[0] * m[0][0] + v[1] * m[1][0]) % 3, (v[0] * m[0][1] + v[1] * m[1][1]) % 3}));
    return Permutation(std::move(images));
  };
  return {act({{{1, 1}, {0, 1}}}), act({{{0, 2}, {1, 0}}})};
}

} // namespace detail

/// PSL(2,p) for a prime p acting on the projective line {0..p-1, infinity=p},
/// generated by x -> x+1 and x -> -1/x.
inline std::vector<Permutation> psl2_prime_generators(int p) {
  std::vector<int> shift(p + 1), invert(p + 1);
  for (int x = 0; x < p; ++x)
    shift[x] = (x + 1) % p;
  shift[p] = p;
  invert[0] = p;
  invert[p] = 0;
  for (int x = 1; x < p; ++x)
    invert[x] = static_cast<int>((p - inverse_mod(x, p)) % p);
  return {Permutation(shift), Permutation(invert)};
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 24; ++n)
    names.push_back("C" + std::to_string(n));
  for (const char *name : {"S3", "S4", "S5", "A4", "A5", "D8", "Q8", "SL(2,3)", "F20", "PSL(2,7)"})
    names.emplace_back(name);
  return names;
}

inline std::optional<std::vector<Permutation>> catalog_generators(std::string_view name) {
  using detail::cycle_perm;
  if (name.size() >= 2 && name[0] == 'C' && name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
    const int n = std::stoi(std::string(name.substr(1)));
    if (n < 1 || n > 24)
      return std::nullopt;
    std::vector<int> cycle(n);
    for (int i = 0; i < n; ++i)
      cycle[i] = i;
    return std::vector<Permutation>{cycle_perm(n, cycle)};
  }
  if (name == "S3")
    return std::vector<Permutation>{cycle_perm(3, {0, 1, 2}), cycle_perm(3, {0, 1})};
  if (name == "S4")
    return std::vector<Permutation>{cycle_perm(4, {0, 1, 2, 3}), cycle_perm(4, {0, 1})};
  if (name == "S5")
    return std::vector<Permutation>{cycle_perm(5, {0, 1, 2, 3, 4}), cycle_perm(5, {0, 1})};
  if (name == "A4")
    return std::vector<Permutation>{cycle_perm(4, {0, 1, 2}), cycle_perm(4, {1, 2, 3})};
  if (name == "A5")
    return std::vector<Permutation>{cycle_perm(5, {0, 1, 2, 3, 4}), cycle_perm(5, {0, 1, 2})};
  if (name == "D8")
    return std::vector<Permutation>{cycle_perm(4, {0, 1, 2, 3}), cycle_perm(4, {0, 2})};
  if (name == "Q8")
    return detail::quaternion_generators();
  if (name == "SL(2,3)" || name == "SL23")
    return detail::sl23_generators();
  if (name == "F20")
    return std::vector<Permutation>{cycle_perm(5, {0, 1, 2, 3, 4}), cycle_perm(5, {1, 2, 4, 3})};
  if (name == "PSL(2,7)" || name == "L2(7)")
    return psl2_prime_generators(7);
  return std::nullopt;
}

inline bool is_catalog_name(std::string_view name) { return catalog_generators(name).has_value(); }

/// A catalog name or a generator list in 1-based cycle notation.
inline PermGroup parse_group(std::string_view text, std::size_t cap = order_cap()) {
  if (auto gens = catalog_generators(text))
    return PermGroup::generate(std::move(*gens), cap);
  if (text.find('(') == std::string_view::npos)
    throw Error(ErrorKind::UnknownGroup, "unknown group '" + std::string(text) + "'");
  return PermGroup::generate(parse_generator_list(text), cap);
}

} // namespace chillag
