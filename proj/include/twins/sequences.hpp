#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "twins/core.hpp"

namespace twins {

// A word over the alphabet [1..r].
class LetterString {
 public:
  LetterString() = default;
  LetterString(int r, std::vector<int> letters)
      : r_(r), letters_(std::move(letters)) {
    if (r < 1) throw ArgumentError("LetterString: palette size must be >= 1");
    for (int l : letters_)
      if (l < 1 || l > r)
        throw ArgumentError("LetterString: letter " + std::to_string(l) +
                            " outside [1," + std::to_string(r) + "]");
  }

  int r() const noexcept { return r_; }
  int size() const noexcept { return static_cast<int>(letters_.size()); }
  // 1-based
  int operator()(Index i) const { return letters_.at(i - 1); }
  const std::vector<int>& letters() const noexcept { return letters_; }

  friend bool operator==(const LetterString&, const LetterString&) = default;

 private:
  int r_ = 1;
  std::vector<int> letters_;
};

// A bijection of [1..n], stored as its one-line notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values) : values_(std::move(values)) {
    std::vector<bool> seen(values_.size() + 1, false);
    for (int v : values_) {
      if (v < 1 || v > size() || seen[v])
        throw ArgumentError("Permutation: values are not a bijection of [1," +
                            std::to_string(size()) + "]");
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }

  int size() const noexcept { return static_cast<int>(values_.size()); }
  // 1-based
  int operator()(Index i) const { return values_.at(i - 1); }
  const std::vector<int>& values() const noexcept { return values_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

// +1 marks an ascent pi(i) < pi(i+1), -1 a descent.
using SignSequence = std::vector<int>;

inline SignSequence sign_sequence(const Permutation& pi) {
  SignSequence s;
  const auto& v = pi.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    s.push_back(v[i] < v[i + 1] ? +1 : -1);
  return s;
}

inline Verdict validate_string_twin(const LetterString& x,
                                    std::span<const Index> I,
                                    std::span<const Index> J) {
  detail::check_indices(I, x.size(), "validate_string_twin");
  detail::check_indices(J, x.size(), "validate_string_twin");
  if (auto v = detail::check_twin_shape(I, J); !v) return v;
  for (std::size_t t = 0; t < I.size(); ++t)
    if (x(I[t]) != x(J[t]))
      return {Verdict::Kind::mismatch, 0, static_cast<int>(t + 1)};
  return {};
}

inline Verdict validate_weak_twin(const Permutation& pi,
                                  std::span<const Index> I,
                                  std::span<const Index> J) {
  detail::check_indices(I, pi.size(), "validate_weak_twin");
  detail::check_indices(J, pi.size(), "validate_weak_twin");
  if (auto v = detail::check_twin_shape(I, J); !v) return v;
  for (std::size_t t = 0; t + 1 < I.size(); ++t) {
    bool up_i = pi(I[t]) < pi(I[t + 1]);
    bool up_j = pi(J[t]) < pi(J[t + 1]);
    if (up_i != up_j)
      return {Verdict::Kind::mismatch, 0, static_cast<int>(t + 1)};
  }
  return {};
}

// Longest common subsequence of the two value sequences (quadratic table,
// rolling rows).
inline int lcs_length(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw ArgumentError("lcs_length: permutations differ in length");
  const auto& u = a.values();
  const auto& w = b.values();
  std::vector<int> prev(w.size() + 1, 0), cur(w.size() + 1, 0);
  for (std::size_t i = 1; i <= u.size(); ++i) {
    for (std::size_t j = 1; j <= w.size(); ++j)
      cur[j] = u[i - 1] == w[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[w.size()];
}

// pi(i) -> n + 1 - pi(i)
inline Permutation complement(const Permutation& pi) {
  std::vector<int> v = pi.values();
  for (int& x : v) x = pi.size() + 1 - x;
  return Permutation(std::move(v));
}

}  // namespace twins
