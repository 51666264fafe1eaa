#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twins/core.hpp"
#include "twins/parallel.hpp"
#include "twins/sequences.hpp"

namespace twins {

struct OracleBudget {
  std::uint64_t max_states = 50'000'000;         // memo entries per search
  std::uint64_t max_enumerations = 1ULL << 21;   // objects per exact_F*
  unsigned jobs = 1;                             // workers for exact_F*
};

struct TwinSearchResult {
  int size = 0;
  TwinPair witness;
};

enum class Engine { plain, compressed };

namespace detail {

// Memoized search over synchronized chain extensions.
//
// Both chains extend in lockstep. If the behind chain ends at `lo` and the
// ahead chain at `hi` (lo < hi), every used index above lo belongs to the
// ahead chain and lies in (lo, hi]. Future indices all exceed lo, so the
// future depends only on (lo, hi, used ∩ (lo, hi]) and not on which chain is
// called I. That triple is the memo key.
//
// Step(prev_behind, next_behind, prev_ahead, next_ahead) decides whether the
// pair may be appended.
template <typename Step>
class WindowSearch {
 public:
  WindowSearch(int n, Step step, std::uint64_t max_states)
      : n_(n), step_(std::move(step)), max_states_(max_states) {
    if (n > 63)
      throw ArgumentError("compressed engine supports n <= 63, got " +
                          std::to_string(n));
  }

  // Longest continuation (in pairs) from the given state.
  int extend(Index lo, Index hi, std::uint64_t window) {
    Key key{window, static_cast<std::uint8_t>(lo), static_cast<std::uint8_t>(hi)};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;
    Entry best{};
    for (Index b = lo + 1; b <= n_; ++b) {
      if (window >> b & 1) continue;
      for (Index a = hi + 1; a <= n_; ++a) {
        if (a == b || !step_(lo, b, hi, a)) continue;
        const Index nlo = std::min(a, b), nhi = std::max(a, b);
        // ahead-chain indices above the new low end, plus the new high end
        std::uint64_t next = (window & ~mask_through(nlo)) | (1ULL << nhi);
        int v = 1 + extend(nlo, nhi, next);
        if (v > best.value) best = {v, static_cast<std::uint8_t>(b),
                                    static_cast<std::uint8_t>(a)};
      }
    }
    if (memo_.size() >= max_states_)
      throw ResourceError("twin search exceeded state budget",
                          memo_.size() + 1, max_states_);
    memo_.emplace(key, best);
    return best.value;
  }

  // Replays stored best moves from a start pair (i in I, j in J).
  TwinPair trace(Index i, Index j) {
    TwinPair t{{i}, {j}};
    Index li = i, lj = j;
    for (;;) {
      const Index lo = std::min(li, lj), hi = std::max(li, lj);
      std::uint64_t window = used_window(t, lo, hi);
      extend(lo, hi, window);
      const Entry& e = memo_.at(Key{window, static_cast<std::uint8_t>(lo),
                                    static_cast<std::uint8_t>(hi)});
      if (e.value == 0) break;
      Index nb = e.behind, na = e.ahead;
      // behind chain is whichever ends at lo
      if (li == lo) {
        li = nb;
        lj = na;
      } else {
        lj = nb;
        li = na;
      }
      t.first.push_back(li);
      t.second.push_back(lj);
    }
    return t;
  }

  std::size_t states() const noexcept { return memo_.size(); }

  static std::uint64_t mask_through(Index v) {
    return v >= 63 ? ~0ULL : (1ULL << (v + 1)) - 1;
  }

 private:
  struct Key {
    std::uint64_t window;
    std::uint8_t lo, hi;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.window * 0x9E3779B97F4A7C15ULL;
      h ^= (static_cast<std::uint64_t>(k.lo) << 8 | k.hi) + 0x632BE59BD9B4E019ULL +
           (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };
  struct Entry {
    int value = 0;
    std::uint8_t behind = 0, ahead = 0;
  };

  static std::uint64_t used_window(const TwinPair& t, Index lo, Index hi) {
    std::uint64_t w = 0;
    for (const auto* side : {&t.first, &t.second})
      for (Index v : *side)
        if (v > lo && v <= hi) w |= 1ULL << v;
    return w;
  }

  int n_;
  Step step_;
  std::uint64_t max_states_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

template <typename Start, typename Step>
TwinSearchResult window_search(int n, Start start_ok, Step step,
                               std::uint64_t max_states) {
  TwinSearchResult best;
  WindowSearch<Step> search(n, std::move(step), max_states);
  // I and J are interchangeable, so start with i < j.
  Index bi = 0, bj = 0;
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j) {
      if (!start_ok(i, j)) continue;
      int v = 1 + search.extend(i, j, 1ULL << j);
      if (v > best.size) {
        best.size = v;
        bi = i;
        bj = j;
      }
    }
  if (best.size > 0) best.witness = search.trace(bi, bj);
  return best;
}

// Memoized over (used set, last of I, last of J): the reference engine.
class PlainTwinSearch {
 public:
  PlainTwinSearch(const EdgeColoring& c, std::uint64_t max_states)
      : c_(c), max_states_(max_states) {
    if (c.n() > 32)
      throw ArgumentError("plain engine supports n <= 32, got " +
                          std::to_string(c.n()));
  }

  TwinSearchResult run() {
    TwinSearchResult best;
    const int n = c_.n();
    for (Index i = 1; i <= n; ++i)
      for (Index j = 1; j <= n; ++j) {
        if (i == j) continue;
        int v = 1 + extend((1ULL << i) | (1ULL << j), i, j);
        if (v > best.size) {
          best.size = v;
          best.witness = TwinPair{{i}, {j}};
        }
      }
    if (best.size > 0) {
      auto& t = best.witness;
      std::uint64_t used = (1ULL << t.first[0]) | (1ULL << t.second[0]);
      for (;;) {
        const Move m = memo_.at(key(used, t.first.back(), t.second.back()));
        if (m.value == 0) break;
        t.first.push_back(m.i);
        t.second.push_back(m.j);
        used |= (1ULL << m.i) | (1ULL << m.j);
      }
    }
    return best;
  }

 private:
  struct Move {
    int value = 0;
    Index i = 0, j = 0;
  };

  static std::uint64_t key(std::uint64_t used, Index li, Index lj) {
    return used | static_cast<std::uint64_t>(li) << 40 |
           static_cast<std::uint64_t>(lj) << 48;
  }

  int extend(std::uint64_t used, Index li, Index lj) {
    const std::uint64_t k = key(used, li, lj);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second.value;
    Move best;
    const int n = c_.n();
    for (Index ni = li + 1; ni <= n; ++ni) {
      if (used >> ni & 1) continue;
      const Color want = c_(li, ni);
      for (Index nj = lj + 1; nj <= n; ++nj) {
        if (nj == ni || (used >> nj & 1)) continue;
        if (c_(lj, nj) != want) continue;
        int v = 1 + extend(used | (1ULL << ni) | (1ULL << nj), ni, nj);
        if (v > best.value) best = {v, ni, nj};
      }
    }
    if (memo_.size() >= max_states_)
      throw ResourceError("plain twin search exceeded state budget",
                          memo_.size() + 1, max_states_);
    memo_.emplace(k, best);
    return best.value;
  }

  const EdgeColoring& c_;
  std::uint64_t max_states_;
  std::unordered_map<std::uint64_t, Move> memo_;
};

}  // namespace detail

// f(c) with a witness twin.
inline TwinSearchResult max_twin(const EdgeColoring& c,
                                 Engine engine = Engine::compressed,
                                 const OracleBudget& budget = {}) {
  if (c.n() < 2) return {};
  if (engine == Engine::plain)
    return detail::PlainTwinSearch(c, budget.max_states).run();
  return detail::window_search(
      c.n(), [](Index, Index) { return true; },
      [&c](Index lo, Index b, Index hi, Index a) {
        return c.at_ordered(lo, b) == c.at_ordered(hi, a);
      },
      budget.max_states);
}

inline TwinSearchResult max_string_twin(const LetterString& x,
                                        const OracleBudget& budget = {}) {
  const auto& v = x.letters();
  auto same = [&v](Index i, Index j) { return v[i - 1] == v[j - 1]; };
  return detail::window_search(
      x.size(), same,
      [same](Index, Index b, Index, Index a) { return same(b, a); },
      budget.max_states);
}

// Buckets every index subset by (size, sign pattern) and looks for two
// disjoint members of one bucket. Exponential in n by design: it shares no
// code path with the chain searches.
inline TwinSearchResult max_weak_twin(const Permutation& pi) {
  const int n = pi.size();
  if (n > 24)
    throw ArgumentError("max_weak_twin supports n <= 24, got " +
                        std::to_string(n));
  TwinSearchResult best;
  if (n < 2) return best;
  const auto& v = pi.values();
  // key: size in the top byte, ascent bits below
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    int size = 0, prev = -1;
    std::uint64_t bits = 0;
    for (int k = 0; k < n; ++k) {
      if (!(s >> k & 1)) continue;
      if (prev >= 0) bits |= static_cast<std::uint64_t>(v[prev] < v[k]) << (size - 1);
      prev = k;
      ++size;
    }
    if (2 * size > n) continue;
    buckets[static_cast<std::uint64_t>(size) << 56 | bits].push_back(s);
  }
  std::uint32_t wi = 0, wj = 0;
  for (const auto& [k, members] : buckets) {
    const int size = static_cast<int>(k >> 56);
    if (size <= best.size) continue;
    for (std::size_t p = 0; p < members.size() && size > best.size; ++p)
      for (std::size_t q = p + 1; q < members.size(); ++q)
        if ((members[p] & members[q]) == 0) {
          best.size = size;
          wi = members[p];
          wj = members[q];
          break;
        }
  }
  for (int k = 0; k < n; ++k) {
    if (wi >> k & 1) best.witness.first.push_back(k + 1);
    if (wj >> k & 1) best.witness.second.push_back(k + 1);
  }
  return best;
}

// Calls visit(twin) for every twin with i_1 < j_1 and size >= min_size whose
// first I-index is `first` (0 = any). Each twin is reported once; its mirror
// (J, I) is not.
template <typename Visit>
void for_each_twin(const EdgeColoring& c, Visit&& visit, int min_size = 1,
                   Index first = 0) {
  const int n = c.n();
  if (n > 63) throw ArgumentError("for_each_twin supports n <= 63");
  TwinPair t;
  std::function<void(std::uint64_t)> grow = [&](std::uint64_t used) {
    if (static_cast<int>(t.size()) >= min_size) visit(static_cast<const TwinPair&>(t));
    const Index li = t.first.back(), lj = t.second.back();
    for (Index a = li + 1; a <= n; ++a) {
      if (used >> a & 1) continue;
      const Color want = c.at_ordered(li, a);
      for (Index b = lj + 1; b <= n; ++b) {
        if (b == a || (used >> b & 1) || c.at_ordered(lj, b) != want) continue;
        t.first.push_back(a);
        t.second.push_back(b);
        grow(used | 1ULL << a | 1ULL << b);
        t.first.pop_back();
        t.second.pop_back();
      }
    }
  };
  for (Index i = first ? first : 1; i <= (first ? first : n); ++i)
    for (Index j = i + 1; j <= n; ++j) {
      t = TwinPair{{i}, {j}};
      grow(1ULL << i | 1ULL << j);
    }
}

template <typename T>
struct ExtremalResult {
  int value = 0;
  T minimizer;
  std::uint64_t enumerated = 0;
};

namespace detail {

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t v = 1;
  for (std::uint64_t e = 0; e < exp; ++e) {
    if (base > 1 && v > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    v *= base;
  }
  return v;
}

// Shards [0, total) into contiguous ranges; eval(index) -> value. Returns
// the minimum value and the smallest index attaining it.
template <typename Eval>
std::pair<int, std::uint64_t> sharded_min(std::uint64_t total, unsigned jobs,
                                          Eval&& eval) {
  const std::uint64_t shards = std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(total, static_cast<std::uint64_t>(jobs) * 8));
  std::vector<std::pair<int, std::uint64_t>> best(
      shards, {std::numeric_limits<int>::max(), 0});
  parallel_for(shards, jobs, [&](std::size_t s) {
    const std::uint64_t lo = total * s / shards, hi = total * (s + 1) / shards;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      int v = eval(idx);
      if (v < best[s].first) best[s] = {v, idx};
    }
  });
  return *std::min_element(best.begin(), best.end());
}

// idx-th coloring in base-r counter order over the upper-triangular edges
// (last edge is the least significant digit, so the order is lexicographic).
inline EdgeColoring coloring_at(int n, int r, std::uint64_t idx) {
  std::vector<Color> colors(EdgeColoring::edge_count(n));
  for (auto it = colors.rbegin(); it != colors.rend(); ++it) {
    *it = static_cast<Color>(idx % r) + 1;
    idx /= r;
  }
  return EdgeColoring(n, r, colors);
}

// idx-th word of [r]^n in lexicographic order.
inline LetterString string_at(int n, int r, std::uint64_t idx) {
  std::vector<int> letters(static_cast<std::size_t>(n));
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    *it = static_cast<int>(idx % r) + 1;
    idx /= r;
  }
  return LetterString(r, std::move(letters));
}

// idx-th permutation of [1..n] in lexicographic order.
inline Permutation permutation_at(int n, std::uint64_t idx) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  std::vector<int> out;
  for (int k = n; k >= 1; --k) {
    std::uint64_t q = idx / fact[k - 1];
    idx %= fact[k - 1];
    out.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return Permutation(std::move(out));
}

}  // namespace detail

// F_r(n): min f(c) over all r-colorings of K_n.
inline ExtremalResult<EdgeColoring> exact_F(int n, int r,
                                            const OracleBudget& budget = {}) {
  if (n < 1 || r < 1) throw ArgumentError("exact_F: need n, r >= 1");
  const std::uint64_t edges = EdgeColoring::edge_count(n);
  const std::uint64_t total = detail::checked_power(r, edges);
  if (total > budget.max_enumerations)
    throw ResourceError("exact_F(" + std::to_string(n) + "," + std::to_string(r) +
                            "): r^C(n,2) colorings exceed enumeration budget",
                        total, budget.max_enumerations);
  auto [value, idx] = detail::sharded_min(total, budget.jobs, [&](std::uint64_t i) {
    return max_twin(detail::coloring_at(n, r, i), Engine::compressed, budget).size;
  });
  return {value, detail::coloring_at(n, r, idx), total};
}

// F^weak(n): min f^weak(pi) over S_n.
inline ExtremalResult<Permutation> exact_F_weak(int n, const OracleBudget& budget = {}) {
  if (n < 1) throw ArgumentError("exact_F_weak: need n >= 1");
  std::uint64_t total = 1;
  for (int k = 2; k <= n; ++k)
    total = total > std::numeric_limits<std::uint64_t>::max() / k
                ? std::numeric_limits<std::uint64_t>::max()
                : total * static_cast<std::uint64_t>(k);
  if (total > budget.max_enumerations)
    throw ResourceError("exact_F_weak(" + std::to_string(n) +
                            "): n! permutations exceed enumeration budget",
                        total, budget.max_enumerations);
  auto [value, idx] = detail::sharded_min(total, budget.jobs, [&](std::uint64_t i) {
    return max_weak_twin(detail::permutation_at(n, i)).size;
  });
  return {value, detail::permutation_at(n, idx), total};
}

// F_r^string(n): min f^string(x) over [r]^n.
inline ExtremalResult<LetterString> exact_F_string(int n, int r,
                                                   const OracleBudget& budget = {}) {
  if (n < 0 || r < 1) throw ArgumentError("exact_F_string: need n >= 0, r >= 1");
  const std::uint64_t total = detail::checked_power(r, n);
  if (total > budget.max_enumerations)
    throw ResourceError("exact_F_string(" + std::to_string(n) + "," +
                            std::to_string(r) + "): r^n strings exceed enumeration budget",
                        total, budget.max_enumerations);
  auto [value, idx] = detail::sharded_min(total, budget.jobs, [&](std::uint64_t i) {
    return max_string_twin(detail::string_at(n, r, i), budget).size;
  });
  return {value, detail::string_at(n, r, idx), total};
}

}  // namespace twins
