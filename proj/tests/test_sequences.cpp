#include <gtest/gtest.h>

#include <algorithm>

#include "support/brute_force.hpp"
#include "twins/random.hpp"
#include "twins/sequences.hpp"

using namespace twins;

TEST(LetterString, Validates) {
  LetterString x(2, {1, 2, 2});
  EXPECT_EQ(x.size(), 3);
  EXPECT_EQ(x(2), 2);
  EXPECT_THROW(LetterString(2, {1, 3}), ArgumentError);
  EXPECT_THROW(LetterString(2, {0}), ArgumentError);
}

TEST(Permutation, Validates) {
  EXPECT_THROW(Permutation({1, 1, 2}), ArgumentError);
  EXPECT_THROW(Permutation({0, 1}), ArgumentError);
  EXPECT_THROW(Permutation({1, 3}), ArgumentError);
  EXPECT_EQ(Permutation::identity(3), Permutation({1, 2, 3}));
}

TEST(SignSequence, Examples) {
  EXPECT_EQ(sign_sequence(Permutation({1, 2, 3})), (SignSequence{+1, +1}));
  EXPECT_EQ(sign_sequence(Permutation({2, 1, 3})), (SignSequence{-1, +1}));
  EXPECT_EQ(sign_sequence(Permutation({3, 2, 1})), (SignSequence{-1, -1}));
  EXPECT_TRUE(sign_sequence(Permutation({1})).empty());
}

TEST(SignSequence, ComplementNegates) {
  for (int trial = 0; trial < 200; ++trial) {
    auto pi = random_permutation(1 + trial % 15, 40 + trial);
    auto s = sign_sequence(pi);
    auto sc = sign_sequence(complement(pi));
    ASSERT_EQ(s.size(), static_cast<std::size_t>(pi.size() - 1));
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(sc[k], -s[k]);
  }
}

TEST(ValidateStringTwin, Examples) {
  LetterString ones(1, {1, 1, 1, 1});
  EXPECT_TRUE(validate_string_twin(ones, std::vector{1, 2}, std::vector{3, 4}));
  LetterString alt(2, {1, 2, 1, 2});
  EXPECT_TRUE(validate_string_twin(alt, std::vector{1, 2}, std::vector{3, 4}));
  LetterString bad(2, {1, 2, 2, 1});
  auto v = validate_string_twin(bad, std::vector{1, 2}, std::vector{3, 4});
  EXPECT_EQ(v.kind, Verdict::Kind::mismatch);
  EXPECT_EQ(v.position, 1);
  EXPECT_EQ(validate_string_twin(alt, std::vector{1, 3}, std::vector{3, 4}).kind,
            Verdict::Kind::overlap);
}

TEST(ValidateWeakTwin, Examples) {
  auto I = std::vector{1, 2}, J = std::vector{3, 4};
  EXPECT_TRUE(validate_weak_twin(Permutation({2, 1, 4, 3}), I, J));
  EXPECT_TRUE(validate_weak_twin(Permutation({1, 2, 3, 4}), I, J));
  EXPECT_FALSE(validate_weak_twin(Permutation({1, 2, 4, 3}), I, J));
}

TEST(ValidateWeakTwin, DependsOnlyOnRelativeOrder) {
  // Keep the relative order on I ∪ J, reshuffle the values elsewhere.
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 8;
    auto pi = random_permutation(rng, n);
    std::vector<int> I, J, rest;
    for (int i = 1; i <= n; ++i) {
      auto d = rng.below(3);
      (d == 0 ? I : d == 1 ? J : rest).push_back(i);
    }
    std::vector<int> used;
    for (int i : I) used.push_back(i);
    for (int i : J) used.push_back(i);
    std::sort(used.begin(), used.end());
    // new values for used positions: a random subset of [n] of the same
    // size, assigned in the same relative order
    std::vector<int> pool(n);
    for (int k = 0; k < n; ++k) pool[k] = k + 1;
    for (int k = n - 1; k > 0; --k) std::swap(pool[k], pool[rng.below(k + 1)]);
    std::vector<int> chosen(pool.begin(), pool.begin() + used.size());
    std::vector<int> others(pool.begin() + used.size(), pool.end());
    std::sort(chosen.begin(), chosen.end());
    std::vector<int> old_vals;
    for (int i : used) old_vals.push_back(pi(i));
    std::vector<int> rank(used.size());
    for (std::size_t a = 0; a < used.size(); ++a)
      rank[a] = static_cast<int>(std::count_if(old_vals.begin(), old_vals.end(),
                                               [&](int w) { return w < old_vals[a]; }));
    std::vector<int> v(n);
    for (std::size_t a = 0; a < used.size(); ++a) v[used[a] - 1] = chosen[rank[a]];
    std::size_t o = 0;
    for (int i : rest) v[i - 1] = others[o++];
    Permutation pi2(v);
    if (I.size() != J.size()) continue;
    EXPECT_EQ(validate_weak_twin(pi, I, J), validate_weak_twin(pi2, I, J));
  }
}

TEST(Lcs, Examples) {
  auto id = Permutation::identity(5);
  EXPECT_EQ(lcs_length(id, id), 5);
  EXPECT_EQ(lcs_length(id, Permutation({5, 4, 3, 2, 1})), 1);
  EXPECT_EQ(lcs_length(Permutation({1, 3, 2}), Permutation({3, 1, 2})), 2);
  EXPECT_EQ(lcs_length(Permutation(std::vector<int>{}), Permutation(std::vector<int>{})), 0);
  EXPECT_THROW(lcs_length(id, Permutation::identity(4)), ArgumentError);
}

TEST(Lcs, SymmetricBoundedAndMatchesBruteForce) {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 10;
    auto a = random_permutation(rng, n), b = random_permutation(rng, n);
    const int l = lcs_length(a, b);
    EXPECT_EQ(l, lcs_length(b, a));
    EXPECT_GE(l, 1);
    EXPECT_LE(l, n);
    EXPECT_EQ(l, brute::lcs(a, b));
    EXPECT_EQ(lcs_length(a, a), n);
  }
}
