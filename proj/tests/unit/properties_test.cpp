#include <gtest/gtest.h>

#include "clawdeg/errors.hpp"
#include "clawdeg/properties.hpp"
#include "oracles.hpp"

using namespace clawdeg;

TEST(FunctionTuple, TextRoundTrip) {
  const FunctionTuple t = parse_function_tuple("f1=1,1,2; f2=2,1; M=3");
  EXPECT_EQ(t.range, 3u);
  EXPECT_EQ(t.values, (std::vector<std::vector<std::uint32_t>>{{1, 1, 2}, {2, 1}}));
  EXPECT_EQ(to_string(t), "f1=1,1,2; f2=2,1; M=3");
  EXPECT_EQ(parse_function_tuple(to_string(t)), t);
}

TEST(FunctionTuple, ParseErrorsCarryColumns) {
  EXPECT_THROW(parse_function_tuple("f1=1,x; M=2"), ParseError);
  EXPECT_THROW(parse_function_tuple("f1=1,2"), ParseError);
  try {
    parse_function_tuple("f1=1,x; M=2");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
  EXPECT_THROW(FunctionTuple({2, {{3}}}).validate(), std::invalid_argument);
}

TEST(FrequencyMatrix, Counts) {
  EXPECT_EQ(freq_matrix({3, {{1, 1, 2}}}), (FrequencyMatrix{{2, 1, 0}}));
  EXPECT_EQ(freq_matrix({4, {{2, 4, 1, 3}}}), (FrequencyMatrix{{1, 1, 1, 1}}));
  EXPECT_EQ(freq_matrix({2, {{2, 2}, {2}}}), (FrequencyMatrix{{0, 2}, {0, 1}}));
}

TEST(OrbitCanonical, Examples) {
  const FunctionTuple a{2, {{1}, {2}}};
  const FunctionTuple b{2, {{2}, {1}}};
  EXPECT_EQ(orbit_canonical(a), orbit_canonical(b));
  EXPECT_EQ(to_string(orbit_canonical(a)), "{(1,0),(0,1)}");
  EXPECT_NE(orbit_canonical(FunctionTuple{2, {{1}, {1}}}), orbit_canonical(a));
  EXPECT_EQ(strip_zero_columns(orbit_canonical(FunctionTuple{4, {{1}, {1}}})),
            (CanonicalKey{{1, 1}}));
}

TEST(OrbitCanonical, KeysMatchExplicitOrbits) {
  const PropertySpec spec = claw_spec(2, 1, 3);
  const auto inputs = enumerate_domain(spec);
  for (const auto& a : inputs) {
    for (const auto& b : inputs) {
      EXPECT_EQ(orbit_canonical(a) == orbit_canonical(b), oracle::same_orbit(a, b))
          << to_string(a) << " vs " << to_string(b);
    }
  }
}

TEST(EvalProperty, Examples) {
  const PropertySpec claw = claw_spec(1, 1, 2);
  EXPECT_TRUE(eval_property(claw, {2, {{1}, {1}}}));
  EXPECT_FALSE(eval_property(claw, {2, {{1}, {2}}}));
  const PropertySpec coll = collision_spec(4, 4);
  EXPECT_TRUE(eval_property(coll, {4, {{1, 1, 2, 2}}}));
  EXPECT_FALSE(eval_property(coll, {4, {{1, 2, 3, 4}}}));
  EXPECT_THROW(eval_property(coll, {4, {{1, 1, 1, 2}}}), PromiseViolation);
  EXPECT_THROW(eval_property(claw, {2, {{1}}}), std::invalid_argument);
  EXPECT_THROW(collision_spec(3, 3), std::invalid_argument);
  const PropertySpec k3 = kclaw_spec({1, 2, 1}, 3);
  EXPECT_TRUE(eval_property(k3, {3, {{2}, {1, 2}, {2}}}));
  EXPECT_FALSE(eval_property(k3, {3, {{2}, {1, 3}, {2}}}));
  const PropertySpec orp = or_on_second_spec(1, 2, 2, 1);
  EXPECT_TRUE(eval_property(orp, {2, {{2}, {2, 1}}}));
  EXPECT_FALSE(eval_property(orp, {2, {{1}, {2, 2}}}));
}

TEST(EvalProperty, CustomTableMissingKeyIsOutsidePromise) {
  const PropertySpec spec = custom_table_spec({1, 1}, 3, {{CanonicalKey{{1, 1}}, true}});
  EXPECT_TRUE(eval_property(spec, {3, {{2}, {2}}}));
  EXPECT_THROW(eval_property(spec, {3, {{2}, {3}}}), PromiseViolation);
}

TEST(EvalProperty, ImageBoundPromise) {
  PropertySpec spec = claw_spec(2, 2, 4);
  spec.image_bound = 2;
  EXPECT_TRUE(in_promise(spec, {4, {{1, 3}, {3, 1}}}));
  EXPECT_FALSE(in_promise(spec, {4, {{1, 2}, {3, 3}}}));
}

TEST(Enumeration, Sizes) {
  EXPECT_EQ(enumerate_domain(claw_spec(1, 1, 2)).size(), 4u);
  // Two one-to-one and two two-to-one functions [2] -> [2].
  const auto coll = enumerate_domain(collision_spec(2, 2));
  EXPECT_EQ(coll.size(), 4u);
  EXPECT_EQ(enumerate_domain(kclaw_spec({1, 1, 1}, 2)).size(), 8u);
  EXPECT_EQ(enumerate_domain(claw_spec(2, 2, 3)).size(), 81u);
  EXPECT_EQ(cube_size(claw_spec(3, 4, 5)), BigInt(78125));
}

TEST(Enumeration, OdometerOrder) {
  const auto all = enumerate_domain(claw_spec(1, 2, 2));
  ASSERT_EQ(all.size(), 8u);
  EXPECT_EQ(to_string(all[0]), "f1=1; f2=1,1; M=2");
  EXPECT_EQ(to_string(all[1]), "f1=1; f2=1,2; M=2");
  EXPECT_EQ(to_string(all[7]), "f1=2; f2=2,2; M=2");
}

TEST(Enumeration, CollisionMatchesDefinition) {
  for (std::uint32_t m : {2u, 4u}) {
    std::size_t expected = 0;
    for (const auto& h : oracle::all_functions(m, m)) {
      std::vector<std::uint32_t> counts(m + 1, 0);
      for (auto v : h) {
        ++counts[v];
      }
      const bool one = std::all_of(counts.begin() + 1, counts.end(), [](auto c) { return c <= 1; });
      const bool two = std::all_of(counts.begin() + 1, counts.end(), [](auto c) { return c == 0 || c == 2; });
      expected += (one || two) ? 1 : 0;
    }
    EXPECT_EQ(enumerate_domain(collision_spec(m, m)).size(), expected);
  }
}

TEST(Enumeration, BudgetExceeded) {
  try {
    enumerate_domain(claw_spec(4, 4, 4), 100);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.count(), 65536);
  }
}

TEST(OrbitClasses, PartitionTheDomain) {
  const PropertySpec spec = claw_spec(2, 2, 3);
  std::uint64_t total = 0;
  for (const OrbitClass& cls : orbit_classes(spec)) {
    total += cls.size;
    EXPECT_EQ(orbit_canonical(cls.representative), cls.key);
    EXPECT_EQ(eval_property(spec, cls.representative), cls.value);
  }
  EXPECT_EQ(total, 81u);
}

TEST(Symmetry, Examples) {
  EXPECT_TRUE(check_symmetry(claw_spec(2, 1, 3)));
  EXPECT_TRUE(check_symmetry(collision_spec(4, 4)));
  EXPECT_TRUE(check_symmetry(kclaw_spec({1, 1, 1}, 3)));
  const PropertySpec first_is_one = custom_predicate_spec(
      {2}, 2, [](const FunctionTuple& t) { return t.values[0][0] == 1; }, "f(1)=1");
  EXPECT_FALSE(check_symmetry(first_is_one));
  EXPECT_FALSE(check_symmetry(first_is_one, SymmetryGroup::DomainOnly));
  const PropertySpec orp = or_on_second_spec(1, 2, 2, 1);
  EXPECT_FALSE(check_symmetry(orp, SymmetryGroup::Full));
  EXPECT_TRUE(check_symmetry(orp, SymmetryGroup::DomainOnly));
}

TEST(Assignments, RawAndFrequency) {
  const FunctionTuple t{3, {{1, 3}}};
  const Assignment raw = raw_assignment(t);
  EXPECT_EQ(raw.size(), 6u);
  EXPECT_EQ(raw.at(VarId::raw(1, 2, 3)), 1);
  EXPECT_EQ(raw.at(VarId::raw(1, 2, 1)), 0);
  const Assignment z = freq_assignment(t);
  EXPECT_EQ(z.at(VarId::freq(1, 1)), 1);
  EXPECT_EQ(z.at(VarId::freq(1, 2)), 0);
}
