#include <gtest/gtest.h>

#include <vcmin/cheese.hpp>
#include <vcmin/generators.hpp>
#include <vcmin/instance.hpp>
#include <vcmin/oracle.hpp>

#include "support.hpp"

using namespace vcmin;

namespace {

DirectedFamily fam(std::size_t n, std::vector<ElementSet> balls) { return DirectedFamily(n, std::move(balls)); }

std::size_t oracle_cost(const ElementSet& s, const DirectedFamily& f) {
  auto r = brute_min_complexity(s, f);
  EXPECT_EQ(r.status, BruteComplexity::Status::found);
  return r.cost;
}

}  // namespace

TEST(Evaluate, SingleCheese) {
  CheeseDecomposition d{3, {{ElementSet(3, {0, 1, 2}), {ElementSet(3, {1})}}}};
  EXPECT_EQ(evaluate(d), ElementSet(3, {0, 2}));
  EXPECT_EQ(d.complexity(), 2u);
}

TEST(Evaluate, NoCheeses) { EXPECT_TRUE(evaluate(CheeseDecomposition{4, {}}).empty()); }

TEST(Evaluate, OverlapNamesPair) {
  CheeseDecomposition d{3, {{ElementSet(3, {2}), {}}, {ElementSet(3, {0}), {}}, {ElementSet(3, {0, 1}), {}}}};
  try {
    (void)evaluate(d);
    FAIL() << "expected DisjointnessViolation";
  } catch (const DisjointnessViolation& e) {
    EXPECT_EQ(e.first(), 1u);
    EXPECT_EQ(e.second(), 2u);
  }
}

TEST(Expressible, EmptyTarget) {
  EXPECT_TRUE(expressible(ElementSet(3), build_forest(3, {ElementSet(3, {0})})));
}

TEST(Expressible, ElementOutsideAllBalls) {
  auto v = expressible(ElementSet(3, {2}), build_forest(3, {ElementSet(3, {0, 1})}));
  EXPECT_EQ(v.kind, ExpressibleVerdict::Kind::outside_all_balls);
  EXPECT_EQ(v.element, 2u);
}

TEST(Expressible, MixedGapWitness) {
  const auto f = fam(2, {ElementSet(2, {0, 1})});
  LaminarForest forest(f);
  auto v = expressible(ElementSet(2, {0}), forest);
  EXPECT_EQ(v.kind, ExpressibleVerdict::Kind::mixed_gap);
  EXPECT_EQ(forest.set(v.node), ElementSet(2, {0, 1}));
  EXPECT_EQ(v.element, 1u);
  // The oracle also finds no decomposition at all.
  EXPECT_EQ(brute_min_complexity(ElementSet(2, {0}), f, {.max_cost = 4}).status,
            BruteComplexity::Status::inexpressible);
  EXPECT_THROW((void)min_complexity(ElementSet(2, {0}), forest), Inexpressible);
}

TEST(MinComplexity, EmptyTargetIsZero) {
  EXPECT_EQ(min_complexity(ElementSet(3), build_forest(3, {ElementSet(3, {0, 1})})), 0u);
  EXPECT_TRUE(decompose(ElementSet(3), build_forest(3, {})).cheeses.empty());
}

TEST(MinComplexity, OneHole) {
  const auto f = fam(3, {ElementSet(3, {0, 1}), ElementSet(3, {0})});
  const ElementSet s(3, {1});
  const auto expected = oracle_cost(s, f);
  ASSERT_EQ(expected, 2u);
  LaminarForest forest(f);
  EXPECT_EQ(min_complexity(s, forest), expected);
  auto d = decompose(s, forest);
  ASSERT_EQ(d.cheeses.size(), 1u);
  EXPECT_EQ(d.cheeses[0].outer, ElementSet(3, {0, 1}));
  ASSERT_EQ(d.cheeses[0].holes.size(), 1u);
  EXPECT_EQ(d.cheeses[0].holes[0], ElementSet(3, {0}));
  EXPECT_EQ(evaluate(d), s);
}

TEST(MinComplexity, NestedReuse) {
  const auto f = fam(4, {ElementSet(4, {0, 1, 2, 3}), ElementSet(4, {0, 1}), ElementSet(4, {0})});
  const ElementSet s(4, {0, 2, 3});
  const auto expected = oracle_cost(s, f);
  ASSERT_EQ(expected, 3u);
  LaminarForest forest(f);
  EXPECT_EQ(min_complexity(s, forest), expected);
  auto d = decompose(s, forest);
  EXPECT_EQ(d.complexity(), 3u);
  EXPECT_EQ(evaluate(d), s);
  ASSERT_EQ(d.cheeses.size(), 2u);
  EXPECT_EQ(d.cheeses[0].outer, ElementSet(4, {0, 1, 2, 3}));
  EXPECT_EQ(d.cheeses[0].holes, std::vector<ElementSet>{ElementSet(4, {0, 1})});
  EXPECT_EQ(d.cheeses[1].outer, ElementSet(4, {0}));
  EXPECT_TRUE(d.cheeses[1].holes.empty());
}

TEST(Restrict, FullKeepIsIdentity) {
  CheeseDecomposition d{4, {{ElementSet(4, {0, 1, 2}), {ElementSet(4, {0})}}, {ElementSet(4, {3}), {}}}};
  EXPECT_EQ(restrict_decomposition(d, ElementSet::full(4)), d);
}

TEST(Restrict, VanishingHoleDropped) {
  CheeseDecomposition d{3, {{ElementSet(3, {0, 1, 2}), {ElementSet(3, {0})}}}};
  auto r = restrict_decomposition(d, ElementSet(3, {1, 2}));
  ASSERT_EQ(r.cheeses.size(), 1u);
  EXPECT_EQ(r.cheeses[0].outer, ElementSet(3, {1, 2}));
  EXPECT_TRUE(r.cheeses[0].holes.empty());
  EXPECT_EQ(r.complexity(), 1u);
}

TEST(Restrict, EmptyCheesePruned) {
  CheeseDecomposition d{4, {{ElementSet(4, {0, 1}), {}}, {ElementSet(4, {2, 3}), {}}}};
  auto r = restrict_decomposition(d, ElementSet(4, {2, 3}));
  ASSERT_EQ(r.cheeses.size(), 1u);
  EXPECT_EQ(r.cheeses[0].outer, ElementSet(4, {2, 3}));
  EXPECT_EQ(r.complexity(), 1u);
}

TEST(GraphComplexity, Examples) {
  ExtractionInstance empty{3, 4, std::vector<ElementSet>(3, ElementSet(4)), DirectedFamily(4), {}, 0};
  EXPECT_EQ(graph_complexity(empty), 0u);
  EXPECT_EQ(auto_bound(empty), 1u);
  ExtractionInstance complete{3, 4, std::vector<ElementSet>(3, ElementSet::full(4)),
                              DirectedFamily(4, {ElementSet::full(4)}), {}, 0};
  EXPECT_EQ(graph_complexity(complete), 1u);
  EXPECT_EQ(auto_bound(complete), 2u);
}

TEST(CheeseProperty, DpMatchesOracleOnRandomFamilies) {
  SplitMix64 rng(21);
  std::size_t compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = rng.between(1, 9);
    auto f = random_laminar_family(n, 3, 3, rng.split(trial));
    if (f.size() > 8) continue;
    LaminarForest forest(f);
    CheeseEnumerator oracle(f, {.max_cost = 6, .max_balls = 8});
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      ElementSet s(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1U) s.insert(i);
      auto brute = oracle.min_cost(s);
      auto dp = try_min_complexity(s, forest);
      if (brute.status == BruteComplexity::Status::inexpressible) {
        ASSERT_FALSE(dp) << s.to_string();
        continue;
      }
      ASSERT_TRUE(dp) << s.to_string();
      if (brute.status == BruteComplexity::Status::found) {
        ASSERT_EQ(*dp, brute.cost) << s.to_string();
        ASSERT_EQ(evaluate(brute.witness), s);
        ++compared;
      } else {
        ASSERT_GT(*dp, 6u);
      }
    }
  }
  EXPECT_GT(compared, 1000u);
}

TEST(CheeseProperty, DecompositionRoundTrip) {
  SplitMix64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = rng.between(1, 120);
    auto f = random_laminar_family(n, 3, 5, rng.split(trial));
    auto inst = flip_sample_graph(f, 8, 5, rng.split(1000 + trial));
    LaminarForest forest(f);
    for (std::size_t a = 0; a < inst.left_size; ++a) {
      const auto& s = inst.adjacency[a];
      auto d = decompose(s, forest);
      ASSERT_EQ(evaluate(d), s);
      ASSERT_EQ(d.complexity(), min_complexity(s, forest));
      ASSERT_LE(d.complexity(), inst.decomps[a].complexity());
      require_balls_in_family(d, f);
    }
  }
}

TEST(CheeseProperty, FlipsGiveDecompositionOfMatchingCost) {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = rng.between(1, 80);
    auto f = random_laminar_family(n, 3, 4, rng.split(trial));
    LaminarForest forest(f);
    const auto balls = forest.node_count() - 1;
    auto picks = rng.sample(balls, std::min<std::size_t>(balls, rng.below(6)));
    for (auto& v : picks) ++v;
    auto lab = labeling_from_flips(forest, picks);
    auto d = reconstruct(forest, lab);
    EXPECT_EQ(d.complexity(), picks.size());
    const auto s = evaluate(d);
    EXPECT_TRUE(lab.consistent_with(s, forest));
    EXPECT_LE(min_complexity(s, forest), picks.size());
  }
}

TEST(CheeseProperty, RestrictionNeverIncreasesComplexity) {
  SplitMix64 rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = rng.between(1, 80);
    auto f = random_laminar_family(n, 3, 4, rng.split(trial));
    auto inst = flip_sample_graph(f, 4, 4, rng.split(500 + trial));
    ElementSet keep(n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng.chance(2, 3)) keep.insert(i);
    auto rf = restrict_family(f, keep);
    for (std::size_t a = 0; a < inst.left_size; ++a) {
      auto r = restrict_decomposition(inst.decomps[a], keep, rf);
      ASSERT_LE(r.complexity(), inst.decomps[a].complexity());
      ASSERT_EQ(evaluate(r), inst.adjacency[a] & keep);
    }
  }
}
