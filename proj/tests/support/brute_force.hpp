#pragma once

// Slow reference answers for small inputs. Nothing here calls into the
// library's search code; each function works from the raw definitions.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "twins/core.hpp"
#include "twins/sequences.hpp"

namespace brute {

// Every assignment of [1..n] to I, J or neither (3^n of them).
template <typename Visit>
void for_each_split(int n, Visit&& visit) {
  std::vector<int> side(static_cast<std::size_t>(n), 0);
  std::vector<int> I, J;
  for (;;) {
    I.clear();
    J.clear();
    for (int k = 0; k < n; ++k) {
      if (side[k] == 1) I.push_back(k + 1);
      if (side[k] == 2) J.push_back(k + 1);
    }
    if (I.size() == J.size() && !I.empty()) visit(I, J);
    int pos = 0;
    while (pos < n && side[pos] == 2) side[pos++] = 0;
    if (pos == n) return;
    ++side[pos];
  }
}

inline bool is_twin(const twins::EdgeColoring& c, const std::vector<int>& I,
                    const std::vector<int>& J) {
  for (std::size_t t = 0; t + 1 < I.size(); ++t)
    if (c(I[t], I[t + 1]) != c(J[t], J[t + 1])) return false;
  return true;
}

inline int max_twin(const twins::EdgeColoring& c) {
  int best = 0;
  for_each_split(c.n(), [&](const auto& I, const auto& J) {
    if (static_cast<int>(I.size()) > best && is_twin(c, I, J)) best = static_cast<int>(I.size());
  });
  return best;
}

inline int max_string_twin(const twins::LetterString& x) {
  int best = 0;
  for_each_split(x.size(), [&](const auto& I, const auto& J) {
    if (static_cast<int>(I.size()) <= best) return;
    for (std::size_t t = 0; t < I.size(); ++t)
      if (x(I[t]) != x(J[t])) return;
    best = static_cast<int>(I.size());
  });
  return best;
}

inline int max_weak_twin(const twins::Permutation& pi) {
  int best = 0;
  for_each_split(pi.size(), [&](const auto& I, const auto& J) {
    if (static_cast<int>(I.size()) <= best) return;
    for (std::size_t t = 0; t + 1 < I.size(); ++t)
      if ((pi(I[t]) < pi(I[t + 1])) != (pi(J[t]) < pi(J[t + 1]))) return;
    best = static_cast<int>(I.size());
  });
  return best;
}

// Counts twins with min I < min J.
inline std::uint64_t count_twins(const twins::EdgeColoring& c) {
  std::uint64_t count = 0;
  for_each_split(c.n(), [&](const auto& I, const auto& J) {
    if (I[0] < J[0] && is_twin(c, I, J)) ++count;
  });
  return count;
}

// Longest common subsequence by trying every subsequence of a.
inline int lcs(const twins::Permutation& a, const twins::Permutation& b) {
  const int n = a.size();
  int best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const int size = __builtin_popcount(s);
    if (size <= best) continue;
    int pos = 1;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      if (!(s >> k & 1)) continue;
      while (pos <= n && b(pos) != a(k + 1)) ++pos;
      if (pos > n) ok = false;
      ++pos;
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace brute
