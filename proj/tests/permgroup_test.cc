#include "symctl/permgroup.hpp"

#include <set>

#include <gtest/gtest.h>

namespace symctl {
namespace {

GTEST_TEST(Permutation, CycleParsingRoundTrip) {
  const auto p = Permutation::FromCycles("(3 7)(4 10)(8 9)", 10);
  EXPECT_EQ(p(2), 6);
  EXPECT_EQ(p(6), 2);
  EXPECT_EQ(p(0), 0);
  EXPECT_EQ(p.ToCycles(), "(3 7)(4 10)(8 9)");
  EXPECT_TRUE(Permutation::FromCycles("()", 3).is_identity());
  EXPECT_TRUE(Permutation::FromCycles("", 3).is_identity());
  EXPECT_EQ(Permutation::Identity(4).ToCycles(), "()");
}

GTEST_TEST(Permutation, OneBasedImages) {
  const std::vector<int> im = {2, 3, 1};
  const auto p = Permutation::FromOneBased(im);
  EXPECT_EQ(p, Permutation::FromCycles("(1 2 3)", 3));
  const std::vector<int> bad = {1, 1, 2};
  EXPECT_THROW(Permutation::FromOneBased(bad), GroupError);
}

GTEST_TEST(Permutation, RejectsMalformedCycles) {
  EXPECT_THROW(Permutation::FromCycles("(1 2 1)", 3), GroupError);
  EXPECT_THROW(Permutation::FromCycles("(1 5)", 4), GroupError);
  EXPECT_THROW(Permutation::FromCycles("(1 2", 4), GroupError);
  EXPECT_THROW(Permutation::FromCycles("(0 1)", 4), GroupError);
  EXPECT_THROW(Permutation::FromCycles("(1 x)", 4), GroupError);
}

GTEST_TEST(Permutation, CompositionAppliesRightFactorFirst) {
  const auto a = Permutation::FromCycles("(1 2)", 3);
  const auto b = Permutation::FromCycles("(2 3)", 3);
  // a(b(1)) = a(1) = 2; a(b(2)) = a(3) = 3; a(b(3)) = a(2) = 1.
  EXPECT_EQ(compose(a, b), Permutation::FromCycles("(1 2 3)", 3));
  EXPECT_EQ(compose(a, a.inverse()), Permutation::Identity(3));
}

GTEST_TEST(Closure, OrdersOfStandardGroups) {
  EXPECT_EQ(closure({Permutation::FromCycles("(1 2 3 4 5 6)", 6)}, 6).order(), 6u);
  EXPECT_EQ(closure({Permutation::FromCycles("(1 2 3 4)", 4),
                     Permutation::FromCycles("(1 3)", 4)},
                    4)
                .order(),
            8u);
  EXPECT_EQ(closure({Permutation::FromCycles("(1 2)", 5),
                     Permutation::FromCycles("(1 2 3 4 5)", 5)},
                    5)
                .order(),
            120u);
  // No generators: the trivial group.
  const auto trivial = closure({}, 7);
  EXPECT_EQ(trivial.order(), 1u);
  EXPECT_TRUE(trivial.element(0).perm.is_identity());
}

GTEST_TEST(Closure, CapIsEnforced) {
  EXPECT_THROW(closure({Permutation::FromCycles("(1 2)", 6),
                        Permutation::FromCycles("(1 2 3 4 5 6)", 6)},
                       6, 100),
               GroupError);
}

GTEST_TEST(Closure, RejectsDegreeMismatch) {
  EXPECT_THROW(closure({Permutation::FromCycles("(1 2)", 3)}, 4), GroupError);
}

GTEST_TEST(Closure, WordsEvaluateToTheirElements) {
  const auto g = closure({Permutation::FromCycles("(1 2)", 5),
                          Permutation::FromCycles("(1 2 3 4 5)", 5)},
                         5);
  ASSERT_TRUE(g.element(0).perm.is_identity());
  for (const auto& el : g.elements()) {
    Permutation acc = Permutation::Identity(5);
    for (const auto& l : el.word) {
      const auto& s = g.generators()[l.generator];
      acc = compose(acc, l.inverse ? s.inverse() : s);
    }
    EXPECT_EQ(acc, el.perm);
  }
}

GTEST_TEST(Closure, ProductAndInverseTables) {
  const auto g = closure({Permutation::FromCycles("(1 4 3 2)", 4),
                          Permutation::FromCycles("(1 3)", 4)},
                         4);
  std::set<std::vector<int>> distinct;
  for (std::size_t i = 0; i < g.order(); ++i) {
    distinct.insert(g.element(i).perm.images());
    EXPECT_EQ(g.element(g.inverse(i)).perm, g.element(i).perm.inverse());
    for (std::size_t j = 0; j < g.order(); ++j) {
      EXPECT_EQ(g.element(g.product(i, j)).perm,
                compose(g.element(i).perm, g.element(j).perm));
    }
  }
  EXPECT_EQ(distinct.size(), g.order());
  EXPECT_EQ(g.index_of(Permutation::FromCycles("(1 2 3 4)", 4)) >= 0, true);
  EXPECT_EQ(g.index_of(Permutation::FromCycles("(1 2)", 4)), -1);
}

GTEST_TEST(ExtendByWords, MatchesDirectComposition) {
  const auto g = closure({Permutation::FromCycles("(1 2 3)", 3),
                          Permutation::FromCycles("(1 2)", 3)},
                         3);
  const auto images = extend_by_words<Permutation>(
      g, g.generators(), Permutation::Identity(3),
      [](const Permutation& p) { return p.inverse(); });
  for (std::size_t i = 0; i < g.order(); ++i) EXPECT_EQ(images[i], g.element(i).perm);
}

}  // namespace
}  // namespace symctl
