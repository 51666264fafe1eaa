#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "twins/core.hpp"
#include "twins/sequences.hpp"

namespace twins {

// All randomness flows through std::mt19937_64 (its output sequence is fixed
// by the C++ standard) and the rejection sampler below, so a seed pins every
// draw on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound > 0. Rejects the top partial block of the
  // 64-bit range so no residue is favoured.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t v;
    do v = engine_(); while (v > limit);
    return v % bound;
  }

  // Uniform in [lo, hi].
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-case seed: depends only on (master, case index), so inserting cases
// elsewhere never shifts an existing case's draws.
inline std::uint64_t case_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

inline EdgeColoring random_coloring(int n, int r, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Color> colors(EdgeColoring::edge_count(n));
  for (auto& c : colors) c = rng.between(1, r);
  return EdgeColoring(n, r, colors);
}

inline LetterString random_string(int n, int r, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> letters(static_cast<std::size_t>(n));
  for (auto& l : letters) l = rng.between(1, r);
  return LetterString(r, std::move(letters));
}

// Fisher-Yates from the back.
inline Permutation random_permutation(Rng& rng, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(v[i], v[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return Permutation(std::move(v));
}

inline Permutation random_permutation(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_permutation(rng, n);
}

}  // namespace twins
