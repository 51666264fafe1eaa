#include <gtest/gtest.h>

#include "support/brute_force.hpp"
#include "twins/builder.hpp"
#include "twins/constructions.hpp"
#include "twins/oracle.hpp"
#include "twins/reductions.hpp"

using namespace twins;

namespace {

BlockProfile profile(std::vector<int> x) {
  const int r = *std::max_element(x.begin(), x.end());
  return BlockProfile(LetterString(r, std::move(x)));
}

CompositeSpec fixed_spec_r4_m3() {
  CompositeSpec s;
  s.r = 4;
  s.m = 3;
  s.x = LetterString(2, {1, 2, 1});
  s.y = LetterString(16, {5, 5, 9});
  for (int i = 0; i < 16; ++i)
    s.perms.push_back(i % 2 ? Permutation({2, 1}) : Permutation({1, 2}));
  return s;
}

}  // namespace

TEST(ExtremalNoMatchable, Examples) {
  auto bc = extremal_no_matchable(2, 5, 2);
  auto c = bc.to_edge_coloring();
  for (Index b1 : bc.b())
    for (Index b2 : bc.b())
      if (b1 < b2) {
        EXPECT_FALSE(find_matchable_orientation(c, Edge(b1, b2), Edge(1, 2)));
      }
  auto one = extremal_no_matchable(1, 4, 1);
  for (Index b : one.b()) EXPECT_EQ(one(1, b), 1);
  EXPECT_THROW(extremal_no_matchable(3, 4, 2), PreconditionError);
}

TEST(ExtremalPartition, MatchablePairsStayInsideParts) {
  for (int r = 1; r <= 3; ++r)
    for (int k = 1; k <= 3; ++k) {
      auto bc = extremal_partition(r, k);
      ASSERT_EQ(static_cast<int>(bc.a().size()), r + 1);
      ASSERT_EQ(static_cast<int>(bc.b().size()), r * k);
      auto c = bc.to_edge_coloring();
      const auto& A = bc.a();
      const auto& B = bc.b();
      for (std::size_t p = 0; p < B.size(); ++p)
        for (std::size_t q = p + 1; q < B.size(); ++q) {
          bool matchable = false;
          for (std::size_t i = 0; i < A.size(); ++i)
            for (std::size_t j = i + 1; j < A.size(); ++j)
              matchable |= find_matchable_orientation(c, Edge(B[p], B[q]), Edge(A[i], A[j]))
                               .has_value();
          EXPECT_EQ(matchable, p / k == q / k) << r << " " << k << " " << p << " " << q;
        }
    }
  auto bc = extremal_partition(2, 2);
  EXPECT_EQ(bc(1, bc.b()[0]), 1);
  EXPECT_EQ(bc(1, bc.b()[2]), 2);
}

TEST(CompositeColoring, RuleOnSmallSpec) {
  auto s = fixed_spec_r4_m3();
  auto c = composite_coloring(s);
  EXPECT_EQ(c.n(), 6);
  const int phi[] = {0, 1, 1, 2, 2, 3, 3}, psi[] = {0, 1, 2, 1, 2, 1, 2};
  for (Index k = 1; k <= 6; ++k) {
    EXPECT_EQ(s.block(k), phi[k]);
    EXPECT_EQ(s.offset(k), psi[k]);
  }
  EXPECT_EQ(c(1, 3), s.x(1));
  EXPECT_EQ(c(1, 2), 2 + s.perms[s.y(1) - 1](1));
  for (Index i = 1; i <= 6; ++i)
    for (Index j = i + 1; j <= 6; ++j) {
      if (s.block(i) < s.block(j)) {
        EXPECT_LE(c(i, j), 2);
      } else {
        EXPECT_GE(c(i, j), 3);
        EXPECT_LE(c(i, j), 4);
      }
    }
}

TEST(CompositeColoring, RejectsBadSpecs) {
  auto s = fixed_spec_r4_m3();
  s.r = 3;
  EXPECT_THROW(composite_coloring(s), PreconditionError);
  EXPECT_THROW(random_composite_spec(5, 3, 1), PreconditionError);
  s = fixed_spec_r4_m3();
  s.perms.pop_back();
  EXPECT_THROW(composite_coloring(s), PreconditionError);
  s = fixed_spec_r4_m3();
  s.y = LetterString(16, {1, 2});
  EXPECT_THROW(composite_coloring(s), PreconditionError);
}

TEST(CompositeColoring, RandomSpecIsDeterministicAndValid) {
  auto a = random_composite_spec(4, 4, 9), b = random_composite_spec(4, 4, 9);
  EXPECT_EQ(composite_coloring(a), composite_coloring(b));
  EXPECT_NO_THROW(a.validate());
  EXPECT_EQ(a.n(), 8);
  EXPECT_EQ(a.perms.size(), 16u);
}

TEST(DecomposeCompositeTwin, EmptyAndInvalid) {
  auto s = fixed_spec_r4_m3();
  auto d = decompose_composite_twin(s, TwinPair{});
  EXPECT_EQ(d.l, 0);
  EXPECT_TRUE(d.h1.empty() && d.h2.empty() && d.h3.empty());
  EXPECT_TRUE(d.structural_violation(s, 0).empty());
  auto c = composite_coloring(s);
  // find an invalid size-2 pair
  TwinPair bad;
  for (Index a = 1; a <= 6 && bad.empty(); ++a)
    for (Index b = a + 1; b <= 6 && bad.empty(); ++b)
      for (Index x = 1; x <= 6 && bad.empty(); ++x)
        for (Index y = x + 1; y <= 6; ++y)
          if (a != x && a != y && b != x && b != y && c(a, b) != c(x, y)) {
            bad = {{a, b}, {x, y}};
            break;
          }
  ASSERT_FALSE(bad.empty());
  EXPECT_THROW(decompose_composite_twin(s, bad), ArgumentError);
}

TEST(DecomposeCompositeTwin, EveryTwinOfSeededSpecs) {
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_composite_spec(4, 4, 500 + trial);
    auto c = composite_coloring(s);
    const int fx = max_string_twin(s.x).size, fy = max_string_twin(s.y).size;
    std::uint64_t seen = 0;
    for_each_twin(c, [&](const TwinPair& t) {
      ++seen;
      auto d = decompose_composite_twin(s, c, t);
      ASSERT_EQ(d.structural_violation(s, t.size()), "");
      ASSERT_EQ(decomposition_bound_violation(s, d, fx, fy), "");
      int total = 0;
      for (int h = 1; h <= d.l; ++h) total += d.run_size(h);
      EXPECT_EQ(total, static_cast<int>(t.size()));
      for (int h : d.h1) EXPECT_EQ(d.run_size(h), 1);
    });
    EXPECT_GT(seen, 0u);
    const int f = max_twin(c).size;
    const int rhs = s.m + 2 * fy * s.r + (2 * fx + 1) * (max_pairwise_lcs(s) + 1);
    EXPECT_LE(f, rhs);
  }
}

TEST(DecomposeCompositeTwin, SingleBlockSpec) {
  auto s = random_composite_spec(4, 1, 3);
  auto c = composite_coloring(s);
  const int f = max_twin(c).size;
  EXPECT_EQ(f, 1);
  EXPECT_LE(f, s.m + 2 * max_string_twin(s.y).size * s.r +
                   (2 * max_string_twin(s.x).size + 1) * (max_pairwise_lcs(s) + 1));
}

TEST(DecompositionBounds, ViolationsAreReported) {
  auto s = fixed_spec_r4_m3();
  Decomposition d;
  d.l = 1;
  d.blocks_i = {1};
  d.blocks_j = {2};
  d.runs = {{1, 2}};
  d.h2 = {1};
  EXPECT_EQ(decomposition_bound_violation(s, d, 0, 0), "|H2| > 2 f(y)");
  EXPECT_EQ(decomposition_bound_violation(s, d, 0, 1), "");
  d.h2.clear();
  d.h1 = {1};
  EXPECT_NE(decomposition_bound_violation(s, d, 0, 0), "");
  EXPECT_EQ(d.structural_violation(s, 2), "");
  EXPECT_NE(d.structural_violation(s, 3), "");
}

TEST(BlockProfile, WeightsAndBlocks) {
  auto p = profile({1, 2, 1});
  EXPECT_EQ(p.blocks(), 3);
  EXPECT_EQ(p.length(), 15);
  EXPECT_EQ(p.weight(2), 9);
  EXPECT_EQ(p.prefix(0), 0);
  EXPECT_EQ(p.prefix(2), 12);
  EXPECT_EQ(p.block_of(3), 1);
  EXPECT_EQ(p.block_of(4), 2);
  EXPECT_EQ(p.block_of(13), 3);
  EXPECT_EQ(p.block_range(2), std::make_pair(4, 12));
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(p.weight(k) % 2, 1);
}

TEST(SkewSum, Examples) {
  EXPECT_EQ(skew_sum_permutation(profile({1})), Permutation({3, 2, 1}));
  EXPECT_EQ(skew_sum_permutation(profile({1, 1})), Permutation({3, 2, 1, 6, 5, 4}));
  EXPECT_EQ(skew_sum_permutation(profile({2})), Permutation({9, 8, 7, 6, 5, 4, 3, 2, 1}));
}

TEST(BlockColoring, Examples) {
  auto c = block_coloring(profile({1, 1}));
  EXPECT_EQ(c(1, 2), 1);
  EXPECT_EQ(c(3, 4), 2);
  EXPECT_EQ(block_coloring(profile({2})), EdgeColoring(9, 2, 1));
}

TEST(BlockColoring, ComplementOfPermutationReduction) {
  const std::vector<std::vector<int>> profiles{{1},       {2},       {1, 1},    {1, 2},
                                               {2, 1},    {1, 1, 1}, {1, 1, 2}, {1, 2, 1},
                                               {2, 1, 1}};
  std::vector<Color> swap{2, 1};
  for (const auto& x : profiles) {
    auto p = profile(x);
    ASSERT_LE(p.length(), 15);
    auto via_perm = relabel_palette(coloring_from_permutation(skew_sum_permutation(p)), swap);
    EXPECT_EQ(block_coloring(p), via_perm);
  }
}

TEST(TwinBlockGraph, Examples) {
  auto p = profile({1, 1});
  auto g = twin_block_graph(p, {{1, 4}, {2, 5}});
  ASSERT_EQ(g.chi(), 2);
  EXPECT_EQ(g.components[0].shape, BlockGraph::Shape::loop);
  EXPECT_EQ(g.components[1].shape, BlockGraph::Shape::loop);

  g = twin_block_graph(p, {{1, 2}, {4, 5}});
  ASSERT_EQ(g.chi(), 1);
  EXPECT_EQ(g.components[0].shape, BlockGraph::Shape::path);
  EXPECT_EQ(g.components[0].vertices, (std::vector<int>{1, 2}));
  EXPECT_EQ(g.edges.size(), 2u);

  g = twin_block_graph(p, {});
  EXPECT_EQ(g.chi(), 2);
  for (const auto& comp : g.components) EXPECT_EQ(comp.shape, BlockGraph::Shape::singleton);

  EXPECT_THROW(twin_block_graph(p, {{1, 2}, {3, 4}}), ArgumentError);
}

TEST(TwinBlockGraph, PathSkipsUntouchedBlocks) {
  // blocks 1 and 3 joined directly, block 2 untouched: still a path on the
  // sorted vertex set {1, 3}
  auto p = profile({1, 1, 1});
  auto g = twin_block_graph(p, {{1}, {7}});
  ASSERT_EQ(g.chi(), 2);
  EXPECT_EQ(g.components[0].shape, BlockGraph::Shape::path);
  EXPECT_EQ(g.components[0].vertices, (std::vector<int>{1, 3}));
  EXPECT_EQ(g.components[1].shape, BlockGraph::Shape::singleton);
  EXPECT_EQ(check_block_claims(p, {{1}, {7}}).total(), 0u);
}

TEST(UncoveredBlocks, Examples) {
  auto p = profile({1, 1});
  EXPECT_EQ(uncovered_blocks(p, {}), (std::vector<int>{1, 2}));
  EXPECT_EQ(uncovered_blocks(p, {{1, 2, 3}, {4, 5, 6}}), std::vector<int>{});
  EXPECT_EQ(uncovered_blocks(p, {{1, 2}, {3, 4}}), std::vector<int>{2});
  EXPECT_THROW(uncovered_blocks(p, {{1, 2}, {2, 4}}), ArgumentError);
}

TEST(BlockClaims, HoldOnEveryTwinOfSmallProfiles) {
  for (const auto& x : std::vector<std::vector<int>>{{1}, {1, 1}, {1, 2}, {2, 1}}) {
    auto p = profile(x);
    auto c = block_coloring(p);
    std::uint64_t twins = 0;
    BlockClaimViolations v;
    for_each_twin(c, [&](const TwinPair& t) {
      ++twins;
      v += check_block_claims(p, t);
    });
    EXPECT_EQ(v.total(), 0u);
    EXPECT_EQ(twins, brute::count_twins(c));
  }
}

TEST(BlockClaims, DetectsFabricatedViolations) {
  // a covered singleton block, checked without the twin condition mattering
  auto p = profile({1, 1});
  // I=[1,2,3], J=[4,5,6]: both chains in-block then... 1-2,2-3 same block,
  // 4-5,5-6 same block: valid, path {1,2} fully covered, x(1) = x(2)
  auto v = check_block_claims(p, {{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(v.total(), 0u);
  // x = (1,2): same shape but endpoints differ; the twin needs 3 cross-block
  // moves it cannot make, so only a partial cover exists
  auto q = profile({1, 2});
  v = check_block_claims(q, {{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(v.endpoints, 0u);  // block 2 is not covered
}
