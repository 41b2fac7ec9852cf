#include <gtest/gtest.h>

#include <algorithm>

#include "chillag/catalog.hpp"
#include "chillag/character_table.hpp"
#include "chillag/subgroups.hpp"
#include "oracles.hpp"

using namespace chillag;

namespace {

std::vector<std::size_t> sorted_class_sizes(const PermGroup &g) {
  std::vector<std::size_t> out;
  for (const auto &c : g.classes())
    out.push_back(c.size);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST(Groups, GeneratorsS3) {
  const auto g = group_from_generators({parse_cycles("(1,2,3)", 3), parse_cycles("(1,2)", 3)});
  EXPECT_EQ(g.order(), 6u);
}

TEST(Groups, IdentityGeneratesTrivialGroup) {
  const auto g = group_from_generators({Permutation::identity(3)});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.class_count(), 1);
}

TEST(Groups, QuaternionRegularRepresentation) {
  const auto g = parse_group("Q8");
  EXPECT_EQ(g.degree(), 8);
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(g.exponent(), 4);
  EXPECT_EQ(g.order(), oracle::closure(g.generators(), 8).size());
}

TEST(Groups, CapExceeded) {
  try {
    parse_group("S5", 100);
    FAIL() << "expected CapExceeded";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(Groups, InvalidPermutation) {
  EXPECT_THROW(parse_cycles("(1,2,2)"), Error);
  EXPECT_THROW(parse_cycles("(1,0)"), Error);
  EXPECT_THROW(parse_group("(1,2"), Error);
}

TEST(Groups, UnknownGroup) {
  try {
    parse_group("Foo");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownGroup);
  }
}

TEST(Groups, ConjugacyClassesS3) {
  const auto g = parse_group("S3");
  ASSERT_EQ(g.class_count(), 3);
  EXPECT_EQ(g.classes()[0].size, 1u);
  EXPECT_EQ(g.classes()[1].size, 3u);
  EXPECT_EQ(g.classes()[2].size, 2u);
  EXPECT_EQ(g.classes()[1].element_order, 2);
  EXPECT_EQ(g.classes()[2].element_order, 3);
}

TEST(Groups, ConjugacyClassesS4) { EXPECT_EQ(parse_group("S4").class_count(), 5); }

TEST(Groups, ClassesMatchOrbitOracle) {
  for (const auto &name : catalog_names()) {
    const auto g = parse_group(name);
    if (g.order() > 200)
      continue;
    EXPECT_EQ(sorted_class_sizes(g), oracle::class_sizes(g.elements())) << name;
  }
}

TEST(Groups, StructureConstantsS3) {
  const auto g = parse_group("S3");
  const auto a = class_structure_constants(g);
  EXPECT_EQ(a(1, 1, 0), 3);
  EXPECT_EQ(a(1, 1, 1), 0);
  EXPECT_EQ(a(1, 1, 2), 3);
  std::int64_t count = 0;
  for (int k = 0; k < 3; ++k)
    count += a(1, 1, k) * static_cast<std::int64_t>(g.classes()[k].size);
  EXPECT_EQ(count, 9);
}

TEST(Groups, StructureConstantsCountingIdentity) {
  for (const auto &name : {"S4", "A4", "D8", "Q8", "SL(2,3)", "F20", "C6"}) {
    const auto g = parse_group(name);
    const auto a = class_structure_constants(g);
    const int n = g.class_count();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::int64_t count = 0;
        for (int k = 0; k < n; ++k) {
          EXPECT_EQ(a(0, j, k), j == k ? 1 : 0);
          count += a(i, j, k) * static_cast<std::int64_t>(g.classes()[k].size);
        }
        EXPECT_EQ(count, static_cast<std::int64_t>(g.classes()[i].size * g.classes()[j].size)) << name;
      }
  }
}

TEST(Groups, PowerMap) {
  const auto g = parse_group("S3");
  const auto sq = power_map(g, 2);
  EXPECT_EQ(sq[1], 0);
  EXPECT_EQ(sq[2], 2);
  const auto id = power_map(parse_group("S4"), 1);
  for (int c = 0; c < 5; ++c)
    EXPECT_EQ(id[c], c);
}

TEST(Groups, PiClasses) {
  EXPECT_EQ(pi_classes(parse_group("S3"), {3}), (std::vector<int>{0, 2}));
  EXPECT_EQ(pi_classes(parse_group("S3"), {2, 3}).size(), 3u);
  const auto g = parse_group("S4");
  const auto c = pi_classes(g, {3});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(g.classes()[c[1]].element_order, 3);
}

TEST(Groups, OPiExamples) {
  EXPECT_EQ(o_pi(parse_group("S3"), {3}).order(), 3u);
  EXPECT_EQ(o_pi(parse_group("S3"), {2}).order(), 1u);
  EXPECT_EQ(o_pi(parse_group("C12"), {2}).order(), 4u);
  EXPECT_EQ(o_pi(parse_group("C12"), {3}).order(), 3u);
}

TEST(Groups, OPiMatchesNormalClosureOracle) {
  for (const auto &name : {"S3", "S4", "A4", "D8", "Q8", "SL(2,3)", "F20", "C12", "A5"}) {
    const auto g = parse_group(name);
    const auto primes = prime_divisors(static_cast<std::int64_t>(g.order()));
    for (int mask = 1; mask < (1 << primes.size()); ++mask) {
      PrimeSet pi;
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (mask >> i & 1)
          pi.insert(primes[i]);
      EXPECT_EQ(o_pi(g, pi).order(), oracle::o_pi_order(g.elements(), pi, g.degree())) << name;
    }
  }
}

TEST(Groups, PiSeparable) {
  EXPECT_TRUE(is_pi_separable(parse_group("S4"), {2}));
  EXPECT_FALSE(is_pi_separable(parse_group("A5"), {2}));
  EXPECT_FALSE(is_pi_separable(parse_group("PSL(2,7)"), {7}));
  EXPECT_TRUE(is_pi_separable(parse_group("A5"), {2, 3, 5}));
  EXPECT_TRUE(is_pi_separable(parse_group("S5"), {2, 3, 5}));
  EXPECT_TRUE(is_pi_separable(parse_group("SL(2,3)"), {3}));
}

TEST(Groups, MaxAbelianExamples) {
  EXPECT_EQ(max_abelian_pi_subgroup_order(parse_group("S3"), {2, 3}), 3u);
  EXPECT_EQ(max_abelian_pi_subgroup_order(parse_group("S3"), {2}), 2u);
  EXPECT_EQ(max_abelian_pi_subgroup_order(parse_group("A5"), {2, 3, 5}), 5u);
}

TEST(Groups, MaxAbelianMatchesExhaustiveOracle) {
  for (const auto &name : {"S3", "S4", "A4", "D8", "Q8", "SL(2,3)", "F20", "C12", "S5", "A5"}) {
    const auto g = parse_group(name);
    const auto primes = prime_divisors(static_cast<std::int64_t>(g.order()));
    for (int mask = 1; mask < (1 << primes.size()); ++mask) {
      PrimeSet pi;
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (mask >> i & 1)
          pi.insert(primes[i]);
      EXPECT_EQ(max_abelian_pi_subgroup_order(g, pi), oracle::max_abelian_pi_order(g.elements(), pi, g.degree()))
          << name;
    }
  }
}

TEST(Groups, InduceTrivialFromA3) {
  const auto g = parse_group("S3");
  const auto h = group_from_generators({parse_cycles("(1,2,3)", 3)});
  const auto induced = induce_class_function(g, h, std::vector<Cyclotomic>(h.class_count(), Cyclotomic(1)));
  EXPECT_EQ(induced, (std::vector<Cyclotomic>{2, 0, 2}));
}

TEST(Groups, InduceFromWholeGroupAndDegree) {
  const auto g = parse_group("S4");
  const auto t = character_table(g);
  for (const auto &chi : t.chars)
    EXPECT_EQ(induce_class_function(g, g, chi), chi);
  const auto h = group_from_generators({parse_cycles("(1,2,3)", 4)});
  const auto th = character_table(h);
  for (const auto &mu : th.chars)
    EXPECT_EQ(induce_class_function(g, h, mu)[0], mu[0] * Cyclotomic(8));
}

TEST(Groups, InduceRejectsNonSubgroup) {
  const auto g = parse_group("A4");
  const auto h = group_from_generators({parse_cycles("(1,2)", 4)});
  EXPECT_THROW(induce_class_function(g, h, {1, 1}), Error);
}
