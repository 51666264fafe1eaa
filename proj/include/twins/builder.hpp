#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twins/core.hpp"

namespace twins {

// An r-coloring of the complete bipartite graph between A and B.
class BipartiteColoring {
 public:
  BipartiteColoring(std::vector<Index> a, std::vector<Index> b, int r)
      : a_(std::move(a)), b_(std::move(b)), r_(r),
        colors_(a_.size() * b_.size(), 1) {
    if (r < 1) throw ArgumentError("BipartiteColoring: palette size must be >= 1");
    for (Index x : a_)
      if (std::find(b_.begin(), b_.end(), x) != b_.end())
        throw ArgumentError("BipartiteColoring: A and B must be disjoint");
  }

  // Cross edges of an edge coloring between two disjoint vertex lists.
  static BipartiteColoring induced(const EdgeColoring& c, std::vector<Index> a,
                                   std::vector<Index> b) {
    BipartiteColoring bc(std::move(a), std::move(b), c.r());
    for (std::size_t i = 0; i < bc.a_.size(); ++i)
      for (std::size_t j = 0; j < bc.b_.size(); ++j)
        bc.colors_[i * bc.b_.size() + j] = c(bc.a_[i], bc.b_[j]);
    return bc;
  }

  const std::vector<Index>& a() const noexcept { return a_; }
  const std::vector<Index>& b() const noexcept { return b_; }
  int r() const noexcept { return r_; }

  // By position in A and B (0-based).
  Color at(std::size_t ai, std::size_t bi) const {
    return colors_[ai * b_.size() + bi];
  }
  void set_at(std::size_t ai, std::size_t bi, Color c) {
    if (c < 1 || c > r_)
      throw ArgumentError("BipartiteColoring: color outside palette");
    colors_[ai * b_.size() + bi] = c;
  }

  // By vertex label.
  Color operator()(Index a, Index b) const {
    return at(position(a_, a), position(b_, b));
  }

  // Embed into a coloring of K_n, n = max label; non-cross edges get `fill`.
  EdgeColoring to_edge_coloring(Color fill = 1) const {
    Index n = 0;
    for (Index x : a_) n = std::max(n, x);
    for (Index x : b_) n = std::max(n, x);
    EdgeColoring c(n, r_, fill);
    for (std::size_t i = 0; i < a_.size(); ++i)
      for (std::size_t j = 0; j < b_.size(); ++j) c.set(a_[i], b_[j], at(i, j));
    return c;
  }

 private:
  static std::size_t position(const std::vector<Index>& side, Index v) {
    auto it = std::find(side.begin(), side.end(), v);
    if (it == side.end())
      throw ArgumentError("BipartiteColoring: vertex " + std::to_string(v) +
                          " not on this side");
    return static_cast<std::size_t>(it - side.begin());
  }

  std::vector<Index> a_;
  std::vector<Index> b_;
  int r_;
  std::vector<Color> colors_;
};

// Two distinct A-vertices joined to b in the popular color.
struct PopularityWitness {
  Index b = 0;
  std::array<Index, 2> a{};
};

struct PopularSubset {
  Color color = 0;
  std::vector<Index> members;  // B', ascending, exactly k+1 entries
  std::vector<PopularityWitness> witnesses;  // parallel to members
};

// Each b is assigned the smallest color it is popular in; the smallest color
// class larger than k is kept, truncated to its k+1 smallest B-vertices.
inline PopularSubset popular_subset(const BipartiteColoring& bc, int r, int k) {
  if (r < 1 || k < 1) throw PreconditionError("popular_subset: need r, k >= 1");
  const auto& A = bc.a();
  const auto& B = bc.b();
  if (static_cast<int>(A.size()) != r + 1 ||
      static_cast<int>(B.size()) != r * k + 1)
    throw PreconditionError("popular_subset: need |A| = r+1 and |B| = rk+1, got |A|=" +
                            std::to_string(A.size()) +
                            ", |B|=" + std::to_string(B.size()));
  if (bc.r() > r)
    throw PreconditionError("popular_subset: coloring uses a larger palette");

  std::vector<std::vector<std::pair<Index, PopularityWitness>>> classes(r + 1);
  std::vector<std::size_t> first_hit(r + 1);
  for (std::size_t bi = 0; bi < B.size(); ++bi) {
    // first A-position per color; a repeat makes b popular in that color
    std::fill(first_hit.begin(), first_hit.end(), A.size());
    std::optional<PopularityWitness> best;
    Color best_color = r + 1;
    for (std::size_t ai = 0; ai < A.size(); ++ai) {
      Color col = bc.at(ai, bi);
      if (first_hit[col] == A.size()) {
        first_hit[col] = ai;
      } else if (col < best_color) {
        best_color = col;
        best = PopularityWitness{B[bi], {A[first_hit[col]], A[ai]}};
      }
    }
    // |A| = r+1 > r forces a repeated color
    classes[best_color].emplace_back(B[bi], *best);
  }

  for (Color col = 1; col <= r; ++col) {
    auto& cls = classes[col];
    if (static_cast<int>(cls.size()) <= k) continue;
    std::sort(cls.begin(), cls.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    PopularSubset out;
    out.color = col;
    for (int t = 0; t <= k; ++t) {
      out.members.push_back(cls[t].first);
      out.witnesses.push_back(cls[t].second);
    }
    return out;
  }
  throw std::logic_error("popular_subset: pigeonhole failed");  // unreachable
}

struct MatchedPair {
  Index a1 = 0;
  Index a2 = 0;
  MatchOrientation orientation;  // p = (a1, a2), q = (b1, b2)
};

// a1 is b1's first witness; a2 is whichever of b2's witnesses avoids a1.
inline MatchedPair matchable_pair_via(const std::vector<PopularityWitness>& witnesses,
                                      Index b1, Index b2) {
  if (b1 == b2) throw ArgumentError("matchable_pair_via: b1 == b2");
  auto find = [&](Index b) -> const PopularityWitness& {
    for (const auto& w : witnesses)
      if (w.b == b) return w;
    throw ArgumentError("matchable_pair_via: " + std::to_string(b) +
                        " is not in B'");
  };
  const auto& w1 = find(b1);
  const auto& w2 = find(b2);
  Index a1 = w1.a[0];
  Index a2 = w2.a[0] != a1 ? w2.a[0] : w2.a[1];
  return {a1, a2, MatchOrientation{{a1, a2}, {b1, b2}}};
}

// Per-level record of which pairs end a twin of that length and how.
struct LadderState {
  struct Witness {
    Edge pair;
    Edge parent;                   // meaningless at level 1
    MatchOrientation orientation;  // p orders parent, q orders pair
  };
  struct Level {
    std::vector<Index> members;  // U_t, ascending
    std::vector<Witness> witnesses;

    const Witness& witness(Edge e) const {
      for (const auto& w : witnesses)
        if (w.pair == e) return w;
      throw ArgumentError("LadderState: pair {" + std::to_string(e.lo) + "," +
                          std::to_string(e.hi) + "} not recorded");
    }
  };

  std::vector<Level> levels;  // levels[t-1] is U_t

  int depth() const noexcept { return static_cast<int>(levels.size()); }

  // Walks parent pointers down to level 1 and replays the extensions.
  TwinPair reconstruct(const EdgeColoring& c, int level, Edge pair) const {
    if (level < 1 || level > depth())
      throw ArgumentError("LadderState: level out of range");
    std::vector<const Witness*> chain;
    Edge cur = pair;
    for (int t = level; t >= 2; --t) {
      const Witness& w = levels[t - 1].witness(cur);
      chain.push_back(&w);
      cur = w.parent;
    }
    levels[0].witness(cur);
    TwinPair twin{{cur.lo}, {cur.hi}};
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      twin = extend_twin(c, twin, (*it)->pair, (*it)->orientation);
    return twin;
  }

  // Every recorded pair reconstructs to a valid twin of its level's size
  // whose maxima are that pair.
  bool verify(const EdgeColoring& c, std::string* why = nullptr) const {
    for (int t = 1; t <= depth(); ++t) {
      for (const auto& w : levels[t - 1].witnesses) {
        std::string err;
        try {
          TwinPair tw = reconstruct(c, t, w.pair);
          if (!validate_twin(c, tw))
            err = "invalid twin";
          else if (static_cast<int>(tw.size()) != t)
            err = "wrong size";
          else if (Edge(tw.first.back(), tw.second.back()) != w.pair)
            err = "maxima differ from pair";
        } catch (const std::exception& e) {
          err = e.what();
        }
        if (!err.empty()) {
          if (why)
            *why = "level " + std::to_string(t) + " pair {" +
                   std::to_string(w.pair.lo) + "," + std::to_string(w.pair.hi) +
                   "}: " + err;
          return false;
        }
      }
    }
    return true;
  }
};

struct BuildResult {
  TwinPair twin;
  int depth = 0;  // ladder levels reached
  LadderState ladder;
};

namespace detail {

inline LadderState::Level singleton_level(std::vector<Index> members) {
  LadderState::Level lvl{std::move(members), {}};
  for (std::size_t i = 0; i < lvl.members.size(); ++i)
    for (std::size_t j = i + 1; j < lvl.members.size(); ++j)
      lvl.witnesses.push_back({Edge(lvl.members[i], lvl.members[j]), {}, {}});
  return lvl;
}

inline BuildResult finish(const EdgeColoring& c, LadderState ladder) {
  BuildResult out;
  const auto& top = ladder.levels.back();
  out.depth = ladder.depth();
  auto first = std::min_element(
      top.witnesses.begin(), top.witnesses.end(),
      [](const auto& a, const auto& b) { return a.pair < b.pair; });
  out.twin = ladder.reconstruct(c, out.depth, first->pair);
  out.ladder = std::move(ladder);
  return out;
}

inline BuildResult tiny(int n) {
  BuildResult out;
  if (n >= 2) {
    out.twin = TwinPair{{1}, {2}};
    out.depth = 1;
  }
  return out;
}

}  // namespace detail

// Interval ladder: U_1 = [r+1]; U_t is a popular (r+1)-subset of the t-th
// block of r^2+1 consecutive indices, matched against U_{t-1}.
inline BuildResult build_twin_general(const EdgeColoring& c) {
  const int n = c.n(), r = c.r();
  const int width = r * r + 1;
  const int levels = n / width;
  if (levels == 0) return detail::tiny(n);

  LadderState ladder;
  std::vector<Index> first(r + 1);
  for (int i = 0; i <= r; ++i) first[i] = i + 1;
  ladder.levels.push_back(detail::singleton_level(std::move(first)));

  for (int t = 2; t <= levels; ++t) {
    std::vector<Index> block(width);
    for (int s = 0; s < width; ++s) block[s] = (t - 1) * width + 1 + s;
    auto bc = BipartiteColoring::induced(c, ladder.levels.back().members, block);
    auto pop = popular_subset(bc, r, r);
    LadderState::Level lvl{pop.members, {}};
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
      for (std::size_t j = i + 1; j < pop.members.size(); ++j) {
        auto m = matchable_pair_via(pop.witnesses, pop.members[i], pop.members[j]);
        lvl.witnesses.push_back(
            {Edge(pop.members[i], pop.members[j]), Edge(m.a1, m.a2), m.orientation});
      }
    }
    ladder.levels.push_back(std::move(lvl));
  }
  return detail::finish(c, std::move(ladder));
}

// Which case of the triangle step fired, for diagnostics.
enum class BinaryCase { none, all_agree, few_split, many_split };

// Triangle ladder for 2-colorings: U_t = {x<y<z} spans a triangle of
// twin-endpoint pairs; each step inspects Z = {z..z+4} and exposes at most
// four new indices.
inline BuildResult build_twin_binary(const EdgeColoring& c,
                                     std::vector<BinaryCase>* cases = nullptr) {
  if (c.r() != 2)
    throw PreconditionError("build_twin_binary: palette size must be 2, got " +
                            std::to_string(c.r()));
  const int n = c.n();
  if (n < 3) return detail::tiny(n);

  LadderState ladder;
  ladder.levels.push_back(detail::singleton_level({1, 2, 3}));

  for (;;) {
    const auto& u = ladder.levels.back().members;
    const Index x = u[0], y = u[1], z = u[2];
    if (z + 4 > n) break;

    std::vector<Index> ones, twos, split;  // A, B, S
    for (Index l = z; l <= z + 4; ++l) {
      Color cx = c(x, l), cy = c(y, l);
      if (cx != cy)
        split.push_back(l);
      else
        (cx == 1 ? ones : twos).push_back(l);
    }

    LadderState::Level next;
    auto same_class_edge = [&](Index a, Index b) {
      // c(x,a) = c(y,b): (x,y),(a,b) is a c-matching off the edge {x,y}
      next.witnesses.push_back({Edge(a, b), Edge(x, y), MatchOrientation{{x, y}, {a, b}}});
    };

    BinaryCase which;
    if (split.empty()) {
      which = BinaryCase::all_agree;
      const auto& big = ones.size() >= twos.size() ? ones : twos;
      next.members = {big[0], big[1], big[2]};
      same_class_edge(big[0], big[1]);
      same_class_edge(big[0], big[2]);
      same_class_edge(big[1], big[2]);
    } else if (split.size() <= 2) {
      which = BinaryCase::few_split;
      const bool use_ones = ones.size() >= twos.size();
      const auto& cls = use_ones ? ones : twos;
      const Color target = use_ones ? 1 : 2;
      const Index a = cls[0], a2 = cls[1], s = split[0];
      // o sees s in the class color; the other endpoint sees a in it
      const Index o = c(x, s) == target ? x : y;
      const Index other = o == x ? y : x;
      same_class_edge(a, a2);
      for (Index member : {a, a2})
        next.witnesses.push_back(
            {Edge(s, member), Edge(x, y), MatchOrientation{{o, other}, {s, member}}});
      next.members = {a, a2, s};
    } else {
      which = BinaryCase::many_split;
      std::vector<Index> s_rest;
      for (Index s : split)
        if (s != z) s_rest.push_back(s);
      const Index s1 = s_rest[0], s2 = s_rest[1];
      Index l = 0;
      for (Index v = z + 1; v <= z + 4; ++v)
        if (v != s1 && v != s2) {
          l = v;
          break;
        }
      // for s in S\{z} and any other l in Z\{z}, one of x, y sees s in
      // the color of {z,l}
      auto split_edge = [&](Index s, Index other) {
        const Index o = c(x, s) == c(z, other) ? x : y;
        next.witnesses.push_back(
            {Edge(s, other), Edge(o, z), MatchOrientation{{o, z}, {s, other}}});
      };
      split_edge(s1, s2);
      split_edge(s1, l);
      split_edge(s2, l);
      next.members = {s1, s2, l};
    }
    std::sort(next.members.begin(), next.members.end());
    if (cases) cases->push_back(which);
    ladder.levels.push_back(std::move(next));
  }
  return detail::finish(c, std::move(ladder));
}

}  // namespace twins
