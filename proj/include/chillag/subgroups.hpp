#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "chillag/cyclotomic.hpp"
#include "chillag/perm_group.hpp"

namespace chillag {

/// A subgroup of an enumerated group, as sorted element ids of the parent.
struct Subgroup {
  std::vector<int> elements;
  std::vector<int> generators;

  std::size_t order() const { return elements.size(); }
  bool contains(int id) const { return std::binary_search(elements.begin(), elements.end(), id); }
};

namespace detail {

inline std::vector<int> closure_of(const PermGroup &g, std::span<const int> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t idx = 0; idx < elems.size(); ++idx)
    for (int s : gens) {
      const int next = g.multiply(elems[idx], s);
      if (!in[next]) {
        in[next] = 1;
        elems.push_back(next);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

} // namespace detail

/// Subgroup generated by `candidates`; keeps only generators that enlarge it.
inline Subgroup generate_subgroup(const PermGroup &g, std::span<const int> candidates) {
  Subgroup h;
  h.elements = {0};
  for (int c : candidates) {
    if (h.contains(c))
      continue;
    h.generators.push_back(c);
    h.elements = detail::closure_of(g, h.generators);
  }
  return h;
}

inline Subgroup trivial_subgroup() { return Subgroup{{0}, {}}; }

inline Subgroup whole_group(const PermGroup &g) {
  std::vector<int> all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = static_cast<int>(i);
  return generate_subgroup(g, all);
}

/// Normal closure of the class of `element`.
inline Subgroup normal_closure_of_class(const PermGroup &g, int element) {
  return generate_subgroup(g, g.classes()[g.class_of(element)].members);
}

/// O_pi(G) as ids: generated by pi-elements whose normal closure is a pi-group.
inline Subgroup o_pi_subgroup(const PermGroup &g, const PrimeSet &pi) {
  std::vector<int> candidates;
  for (const auto &c : g.classes()) {
    if (c.id == 0 || !is_pi_number(c.element_order, pi))
      continue;
    const Subgroup n = normal_closure_of_class(g, c.representative);
    if (is_pi_number(static_cast<std::int64_t>(n.order()), pi))
      candidates.insert(candidates.end(), c.members.begin(), c.members.end());
  }
  return generate_subgroup(g, candidates);
}

/// The subgroup as a group in its own right.
inline PermGroup as_perm_group(const PermGroup &g, const Subgroup &h) {
  std::vector<Permutation> gens;
  for (int id : h.generators)
    gens.push_back(g.element(id));
  if (gens.empty())
    gens.push_back(Permutation::identity(g.degree()));
  return PermGroup::generate(std::move(gens), std::max<std::size_t>(h.order(), 1));
}

inline PermGroup o_pi(const PermGroup &g, const PrimeSet &pi) {
  return as_perm_group(g, o_pi_subgroup(g, pi));
}

/// G/N realized as the action of G on the right cosets of a normal subgroup N.
inline PermGroup quotient(const PermGroup &g, const Subgroup &n, std::size_t cap) {
  std::vector<int> coset_of(g.order(), -1);
  std::vector<int> coset_rep;
  for (int x = 0; x < static_cast<int>(g.order()); ++x) {
    if (coset_of[x] >= 0)
      continue;
    const int c = static_cast<int>(coset_rep.size());
    coset_rep.push_back(x);
    for (int m : n.elements)
      coset_of[g.multiply(m, x)] = c;
  }
  std::vector<Permutation> gens;
  for (const auto &gen : g.generators()) {
    const int gid = *g.find(gen);
    std::vector<int> images(coset_rep.size());
    for (std::size_t c = 0; c < coset_rep.size(); ++c)
      images[c] = coset_of[g.multiply(coset_rep[c], gid)];
    gens.emplace_back(std::move(images));
  }
  return PermGroup::generate(std::move(gens), cap);
}

/// Repeatedly factors out O_pi or O_pi'; separable iff this reaches 1.
inline bool is_pi_separable(const PermGroup &g, const PrimeSet &pi, std::size_t cap = kDefaultOrderCap) {
  PermGroup current = g;
  while (current.order() > 1) {
    const PrimeSet pi_prime = complement_primes(static_cast<std::int64_t>(current.order()), pi);
    Subgroup n = o_pi_subgroup(current, pi);
    if (n.order() == 1)
      n = o_pi_subgroup(current, pi_prime);
    if (n.order() == 1)
      return false;
    if (n.order() == current.order())
      return true;
    current = quotient(current, n, cap);
  }
  return true;
}

struct AbelianSubgroupResult {
  std::size_t order = 1;
  Subgroup subgroup;
};

/// Largest abelian subgroup of pi-order: cyclic pi-subgroups grown by
/// pi-elements of their centralizers, breadth first, deduplicated.
inline AbelianSubgroupResult max_abelian_pi_subgroup(const PermGroup &g, const PrimeSet &pi) {
  AbelianSubgroupResult best{1, trivial_subgroup()};
  std::vector<int> pi_elements;
  for (int x = 1; x < static_cast<int>(g.order()); ++x)
    if (g.is_pi_element(x, pi))
      pi_elements.push_back(x);

  std::set<std::vector<int>> seen;
  std::vector<Subgroup> layer;
  for (int x : pi_elements) {
    Subgroup c = generate_subgroup(g, std::span<const int>(&x, 1));
    if (seen.insert(c.elements).second)
      layer.push_back(std::move(c));
  }
  while (!layer.empty()) {
    std::vector<Subgroup> next;
    for (const auto &h : layer) {
      if (h.order() > best.order)
        best = {h.order(), h};
      for (int x : pi_elements) {
        if (h.contains(x))
          continue;
        const bool central = std::all_of(h.generators.begin(), h.generators.end(),
                                         [&](int s) { return g.commute(s, x); });
        if (!central)
          continue;
        std::vector<int> gens = h.generators;
        gens.push_back(x);
        Subgroup bigger = generate_subgroup(g, gens);
        if (seen.insert(bigger.elements).second)
          next.push_back(std::move(bigger));
      }
    }
    layer = std::move(next);
  }
  return best;
}

inline std::size_t max_abelian_pi_subgroup_order(const PermGroup &g, const PrimeSet &pi) {
  return max_abelian_pi_subgroup(g, pi).order;
}

/// For each class of H (a group whose elements are also elements of G), the
/// class of G containing it. Throws NotSubgroup otherwise.
inline std::vector<int> class_fusion(const PermGroup &g, const PermGroup &h) {
  std::vector<int> fusion;
  for (const auto &c : h.classes()) {
    Permutation p = h.element(c.representative);
    if (p.degree() < g.degree())
      p = p.extended(g.degree());
    const auto id = g.find(p);
    if (!id)
      throw Error(ErrorKind::NotSubgroup, "element " + to_cycle_string(p) + " not in the group");
    fusion.push_back(g.class_of(*id));
  }
  for (const auto &gen : h.generators())
    if (!g.find(gen.degree() < g.degree() ? gen.extended(g.degree()) : gen))
      throw Error(ErrorKind::NotSubgroup, "generator " + to_cycle_string(gen) + " not in the group");
  return fusion;
}

/// Induction mu^G of a class function on H (given on the classes of H).
inline std::vector<Cyclotomic> induce_class_function(const PermGroup &g, const PermGroup &h,
                                                     const std::vector<Cyclotomic> &mu) {
  const auto fusion = class_fusion(g, h);
  std::vector<Cyclotomic> sums(g.class_count());
  for (std::size_t c = 0; c < fusion.size(); ++c)
    sums[fusion[c]] += mu[c] * Cyclotomic(static_cast<long long>(h.classes()[c].size));
  std::vector<Cyclotomic> out(g.class_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Rational scale(static_cast<long long>(g.order()),
                         static_cast<long long>(h.order() * g.classes()[k].size));
    out[k] = sums[k] * Cyclotomic(scale);
  }
  return out;
}

/// Restriction of a class function on G to the classes of H.
inline std::vector<Cyclotomic> restrict_class_function(const PermGroup &g, const PermGroup &h,
                                                       const std::vector<Cyclotomic> &theta) {
  const auto fusion = class_fusion(g, h);
  std::vector<Cyclotomic> out;
  out.reserve(fusion.size());
  for (int k : fusion)
    out.push_back(theta[k]);
  return out;
}

} // namespace chillag
