#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "twins/builder.hpp"
#include "twins/core.hpp"
#include "twins/random.hpp"
#include "twins/sequences.hpp"

namespace twins {

// ---------------------------------------------------------------------------
// Sharpness examples for the popular-subset step.

// c(ab) = position of a in A; distinct A-vertices never share a color.
inline BipartiteColoring extremal_no_matchable(int size_a, int size_b, int r) {
  if (size_a > r)
    throw PreconditionError("extremal_no_matchable: |A| must be <= r");
  if (size_a < 0 || size_b < 0)
    throw ArgumentError("extremal_no_matchable: negative side size");
  std::vector<Index> a(size_a), b(size_b);
  std::iota(a.begin(), a.end(), 1);
  std::iota(b.begin(), b.end(), size_a + 1);
  BipartiteColoring bc(a, b, r);
  for (int i = 0; i < size_a; ++i)
    for (int j = 0; j < size_b; ++j) bc.set_at(i, j, i + 1);
  return bc;
}

// |A| = r+1, |B| = rk split into r consecutive parts of size k; part i is
// colored i towards all of A.
inline BipartiteColoring extremal_partition(int r, int k) {
  if (r < 1 || k < 1) throw ArgumentError("extremal_partition: need r, k >= 1");
  std::vector<Index> a(r + 1), b(static_cast<std::size_t>(r) * k);
  std::iota(a.begin(), a.end(), 1);
  std::iota(b.begin(), b.end(), r + 2);
  BipartiteColoring bc(a, b, r);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j < r * k; ++j) bc.set_at(i, j, j / k + 1);
  return bc;
}

// ---------------------------------------------------------------------------
// Composite coloring: blocks of width r/2, a global letter between blocks and
// a block-specific permutation inside each block.

struct CompositeSpec {
  int r = 0;                        // even palette
  int m = 0;                        // block count
  LetterString x;                   // over [r/2], length m
  LetterString y;                   // over [r^2], length m
  std::vector<Permutation> perms;   // r^2 permutations of [r/2]

  int half() const noexcept { return r / 2; }
  int big() const noexcept { return r * r; }
  int n() const noexcept { return m * half(); }

  void validate() const {
    if (r < 2 || r % 2 != 0)
      throw PreconditionError("CompositeSpec: r must be even and >= 2, got " +
                              std::to_string(r));
    if (m < 1) throw PreconditionError("CompositeSpec: need m >= 1");
    if (x.size() != m || x.r() != half())
      throw PreconditionError("CompositeSpec: x must be a length-m word over [r/2]");
    if (y.size() != m || y.r() != big())
      throw PreconditionError("CompositeSpec: y must be a length-m word over [r^2]");
    if (static_cast<int>(perms.size()) != big())
      throw PreconditionError("CompositeSpec: need r^2 permutations");
    for (const auto& p : perms)
      if (p.size() != half())
        throw PreconditionError("CompositeSpec: permutations must act on [r/2]");
  }

  // Block of vertex k (1-based).
  int block(Index k) const { return (k + half() - 1) / half(); }
  // Offset of k within its block, in [1..r/2].
  int offset(Index k) const { return k - (block(k) - 1) * half(); }
};

inline CompositeSpec random_composite_spec(int r, int m, std::uint64_t seed) {
  if (r < 2 || r % 2 != 0)
    throw PreconditionError("random_composite_spec: r must be even and >= 2");
  Rng rng(seed);
  CompositeSpec s;
  s.r = r;
  s.m = m;
  std::vector<int> xs(m), ys(m);
  for (auto& v : xs) v = rng.between(1, r / 2);
  for (auto& v : ys) v = rng.between(1, r * r);
  s.x = LetterString(r / 2, xs);
  s.y = LetterString(r * r, ys);
  for (int i = 0; i < r * r; ++i) s.perms.push_back(random_permutation(rng, r / 2));
  return s;
}

inline Color composite_color(const CompositeSpec& s, Index k, Index k2) {
  if (k > k2) std::swap(k, k2);
  const int b = s.block(k);
  if (b < s.block(k2)) return s.x(b);  // global rule
  return s.half() + s.perms[s.y(b) - 1](s.offset(k));  // local rule
}

inline EdgeColoring composite_coloring(const CompositeSpec& s) {
  s.validate();
  EdgeColoring c(s.n(), s.r);
  for (Index i = 1; i <= s.n(); ++i)
    for (Index j = i + 1; j <= s.n(); ++j) c.set(i, j, composite_color(s, i, j));
  return c;
}

// Largest LCS over ordered index pairs i != j of the composite's permutations.
inline int max_pairwise_lcs(const CompositeSpec& s) {
  int best = 0;
  for (std::size_t i = 0; i < s.perms.size(); ++i)
    for (std::size_t j = i + 1; j < s.perms.size(); ++j)
      best = std::max(best, lcs_length(s.perms[i], s.perms[j]));
  return best;
}

struct Decomposition {
  std::vector<int> blocks_i;  // A = Phi(I), ascending
  std::vector<int> blocks_j;  // B = Phi(J), ascending
  int l = 0;
  // runs[h-1] = [first, last] positions t (1-based) whose I-block is a_h
  std::vector<std::pair<int, int>> runs;
  std::vector<int> h1, h2, h3;  // 1-based h

  int run_size(int h) const { return runs[h - 1].second - runs[h - 1].first + 1; }

  // Structural facts that hold for every twin; empty string if all hold.
  std::string structural_violation(const CompositeSpec& s, std::size_t twin_size) const {
    std::vector<int> all;
    for (const auto* part : {&h1, &h2, &h3}) all.insert(all.end(), part->begin(), part->end());
    std::sort(all.begin(), all.end());
    std::vector<int> expect(l);
    std::iota(expect.begin(), expect.end(), 1);
    if (all != expect) return "H1/H2/H3 do not partition [l]";
    if (static_cast<int>(blocks_j.size()) != l) return "|Phi(J)| != |Phi(I)|";
    int next = 1;
    for (int h = 1; h <= l; ++h) {
      if (runs[h - 1].first != next) return "runs do not partition [ell]";
      if (run_size(h) < 1 || run_size(h) > s.half()) return "run larger than r/2";
      next = runs[h - 1].second + 1;
    }
    if (next != static_cast<int>(twin_size) + 1) return "runs do not cover [ell]";
    return {};
  }
};

// Splits a twin of composite_coloring(s) into block runs and classifies each
// run by whether its two blocks coincide (H1), share a y-letter (H2), or
// neither (H3).
inline Decomposition decompose_composite_twin(const CompositeSpec& s,
                                              const EdgeColoring& c,
                                              const TwinPair& t) {
  if (auto v = validate_twin(c, t); !v)
    throw ArgumentError("decompose_composite_twin: not a twin (" + to_string(v) + ")");
  Decomposition d;
  const int ell = static_cast<int>(t.size());
  for (int pos = 1; pos <= ell; ++pos) {
    const int bi = s.block(t.first[pos - 1]);
    if (d.blocks_i.empty() || d.blocks_i.back() != bi) {
      d.blocks_i.push_back(bi);
      d.runs.push_back({pos, pos});
    } else {
      d.runs.back().second = pos;
    }
    const int bj = s.block(t.second[pos - 1]);
    if (d.blocks_j.empty() || d.blocks_j.back() != bj) d.blocks_j.push_back(bj);
  }
  d.l = static_cast<int>(d.blocks_i.size());
  for (int h = 1; h <= d.l && h <= static_cast<int>(d.blocks_j.size()); ++h) {
    const int a = d.blocks_i[h - 1], b = d.blocks_j[h - 1];
    if (a == b)
      d.h1.push_back(h);
    else if (s.y(a) == s.y(b))
      d.h2.push_back(h);
    else
      d.h3.push_back(h);
  }
  return d;
}

inline Decomposition decompose_composite_twin(const CompositeSpec& s,
                                              const TwinPair& t) {
  s.validate();
  return decompose_composite_twin(s, composite_coloring(s), t);
}

// Per-class bounds given the oracle values f^string(x) and f^string(y);
// empty string if all hold.
inline std::string decomposition_bound_violation(const CompositeSpec& s,
                                                 const Decomposition& d,
                                                 int fstring_x, int fstring_y) {
  if (static_cast<int>(d.h1.size()) > s.m) return "|H1| > m";
  for (int h : d.h1)
    if (d.run_size(h) > 1) return "H1 run longer than 1 at h=" + std::to_string(h);
  if (static_cast<int>(d.h2.size()) > 2 * fstring_y) return "|H2| > 2 f(y)";
  for (int h : d.h2)
    if (d.run_size(h) > s.half()) return "H2 run longer than r/2";
  if (static_cast<int>(d.h3.size()) > 2 * fstring_x + 1) return "|H3| > 2 f(x) + 1";
  for (int h : d.h3) {
    const auto& pa = s.perms[s.y(d.blocks_i[h - 1]) - 1];
    const auto& pb = s.perms[s.y(d.blocks_j[h - 1]) - 1];
    if (d.run_size(h) > lcs_length(pa, pb) + 1)
      return "H3 run longer than LCS + 1 at h=" + std::to_string(h);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Weighted block profile behind the weak-twin upper bound.

class BlockProfile {
 public:
  explicit BlockProfile(LetterString x) : x_(std::move(x)) {
    prefix_.push_back(0);
    for (int l : x_.letters()) {
      std::uint64_t w = 1;
      for (int e = 0; e < l; ++e) w *= 3;
      if (prefix_.back() + w > (1u << 30))
        throw ArgumentError("BlockProfile: total length too large");
      weights_.push_back(static_cast<int>(w));
      prefix_.push_back(prefix_.back() + static_cast<int>(w));
    }
    block_of_.assign(static_cast<std::size_t>(length()) + 1, 0);
    for (int k = 1; k <= blocks(); ++k)
      for (int i = prefix_[k - 1] + 1; i <= prefix_[k]; ++i) block_of_[i] = k;
  }

  const LetterString& x() const noexcept { return x_; }
  int blocks() const noexcept { return x_.size(); }                // m
  int length() const noexcept { return prefix_.back(); }           // L_m
  int weight(int k) const { return weights_.at(k - 1); }           // 3^{x_k}
  int prefix(int k) const { return prefix_.at(k); }                // L_k
  int block_of(Index i) const { return block_of_.at(i); }          // k_i
  std::pair<int, int> block_range(int k) const {                   // E_k
    return {prefix_.at(k - 1) + 1, prefix_.at(k)};
  }

 private:
  LetterString x_;
  std::vector<int> weights_;
  std::vector<int> prefix_;
  std::vector<int> block_of_;
};

// Block k occupies positions (L_{k-1}, L_k] with values L_k, L_k - 1, ...,
// L_{k-1} + 1.
inline Permutation skew_sum_permutation(const BlockProfile& p) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(p.length()));
  for (int k = 1; k <= p.blocks(); ++k)
    for (int t = 1; t <= p.weight(k); ++t) v.push_back(p.prefix(k) + 1 - t);
  return Permutation(std::move(v));
}

inline constexpr Color kSameBlockColor = 1;
inline constexpr Color kCrossBlockColor = 2;

inline EdgeColoring block_coloring(const BlockProfile& p) {
  if (p.length() < 2) throw ArgumentError("block_coloring: need L_m >= 2");
  EdgeColoring c(p.length(), 2);
  for (Index i = 1; i <= p.length(); ++i)
    for (Index j = i + 1; j <= p.length(); ++j)
      c.set(i, j, p.block_of(i) == p.block_of(j) ? kSameBlockColor : kCrossBlockColor);
  return c;
}

struct BlockGraph {
  enum class Shape { singleton, loop, path, irregular };
  struct Component {
    Shape shape = Shape::singleton;
    std::vector<int> vertices;  // ascending
  };

  int m = 0;
  std::vector<std::pair<int, int>> edges;  // (phi_I(t), phi_J(t)), t = 1..ell
  std::vector<Component> components;

  int chi() const noexcept { return static_cast<int>(components.size()); }
};

namespace detail {

inline Verdict validate_block_twin(const BlockProfile& p, const TwinPair& t) {
  check_indices(t.first, p.length(), "block twin");
  check_indices(t.second, p.length(), "block twin");
  if (auto v = check_twin_shape(t.first, t.second); !v) return v;
  for (std::size_t s = 0; s + 1 < t.size(); ++s) {
    bool same_i = p.block_of(t.first[s]) == p.block_of(t.first[s + 1]);
    bool same_j = p.block_of(t.second[s]) == p.block_of(t.second[s + 1]);
    if (same_i != same_j) return {Verdict::Kind::mismatch, 0, static_cast<int>(s + 1)};
  }
  return {};
}

inline void require_block_twin(const BlockProfile& p, const TwinPair& t,
                               const char* who) {
  if (auto v = validate_block_twin(p, t); !v)
    throw ArgumentError(std::string(who) + ": not a twin of the block coloring (" +
                        to_string(v) + ")");
}

}  // namespace detail

// G_{I,J} on [m] with its components classified.
inline BlockGraph twin_block_graph(const BlockProfile& p, const TwinPair& t) {
  detail::require_block_twin(p, t, "twin_block_graph");
  BlockGraph g;
  g.m = p.blocks();
  for (std::size_t s = 0; s < t.size(); ++s)
    g.edges.emplace_back(p.block_of(t.first[s]), p.block_of(t.second[s]));

  std::set<std::pair<int, int>> simple;  // deduplicated, lo <= hi
  for (auto [a, b] : g.edges) simple.emplace(std::min(a, b), std::max(a, b));

  std::vector<int> parent(static_cast<std::size_t>(g.m) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [a, b] : simple) parent[find(a)] = find(b);

  std::vector<int> slot(static_cast<std::size_t>(g.m) + 1, -1);
  for (int v = 1; v <= g.m; ++v) {
    int root = find(v);
    if (slot[root] < 0) {
      slot[root] = g.chi();
      g.components.emplace_back();
    }
    g.components[slot[root]].vertices.push_back(v);
  }
  for (auto& comp : g.components) {
    const auto& vs = comp.vertices;
    std::set<std::pair<int, int>> mine;
    for (auto e : simple)
      if (std::binary_search(vs.begin(), vs.end(), e.first)) mine.insert(e);
    if (vs.size() == 1) {
      comp.shape = mine.empty() ? BlockGraph::Shape::singleton : BlockGraph::Shape::loop;
      continue;
    }
    std::set<std::pair<int, int>> chain;
    for (std::size_t q = 0; q + 1 < vs.size(); ++q) chain.emplace(vs[q], vs[q + 1]);
    comp.shape = mine == chain ? BlockGraph::Shape::path : BlockGraph::Shape::irregular;
  }
  return g;
}

// K_{I,J}: blocks not contained in I ∪ J. Only the shape of (I, J) is
// checked; the set is meaningful for any disjoint pair.
inline std::vector<int> uncovered_blocks(const BlockProfile& p, const TwinPair& t) {
  detail::check_indices(t.first, p.length(), "uncovered_blocks");
  detail::check_indices(t.second, p.length(), "uncovered_blocks");
  if (auto v = detail::check_twin_shape(t.first, t.second); !v)
    throw ArgumentError("uncovered_blocks: " + to_string(v));
  std::vector<int> covered(static_cast<std::size_t>(p.blocks()) + 1, 0);
  for (const auto* side : {&t.first, &t.second})
    for (Index i : *side) ++covered[p.block_of(i)];
  std::vector<int> out;
  for (int k = 1; k <= p.blocks(); ++k)
    if (covered[k] < p.weight(k)) out.push_back(k);
  return out;
}

struct BlockClaimViolations {
  std::uint64_t shape = 0;      // component neither singleton, loop nor path
  std::uint64_t loop_parity = 0;  // single-vertex component fully covered
  std::uint64_t dominance = 0;  // peak block of a path triple fully covered
  std::uint64_t endpoints = 0;  // covered path with x(v_1) != x(v_q)

  std::uint64_t total() const noexcept {
    return shape + loop_parity + dominance + endpoints;
  }
  BlockClaimViolations& operator+=(const BlockClaimViolations& o) {
    shape += o.shape;
    loop_parity += o.loop_parity;
    dominance += o.dominance;
    endpoints += o.endpoints;
    return *this;
  }
};

// Checks the four structural facts about one twin of block_coloring(p).
inline BlockClaimViolations check_block_claims(const BlockProfile& p,
                                               const TwinPair& t) {
  BlockClaimViolations out;
  const BlockGraph g = twin_block_graph(p, t);
  const auto k = uncovered_blocks(p, t);
  auto uncovered = [&](int v) { return std::binary_search(k.begin(), k.end(), v); };
  for (const auto& comp : g.components) {
    const auto& vs = comp.vertices;
    switch (comp.shape) {
      case BlockGraph::Shape::irregular:
        ++out.shape;
        break;
      case BlockGraph::Shape::singleton:
      case BlockGraph::Shape::loop:
        if (!uncovered(vs[0])) ++out.loop_parity;
        break;
      case BlockGraph::Shape::path: {
        for (std::size_t q = 0; q + 2 < vs.size(); ++q) {
          const int peak = p.x()(vs[q + 1]);
          if (peak > std::max(p.x()(vs[q]), p.x()(vs[q + 2])) && !uncovered(vs[q + 1]))
            ++out.dominance;
        }
        const bool covered = std::none_of(vs.begin(), vs.end(), uncovered);
        if (covered && p.x()(vs.front()) != p.x()(vs.back())) ++out.endpoints;
        break;
      }
    }
  }
  return out;
}

}  // namespace twins
