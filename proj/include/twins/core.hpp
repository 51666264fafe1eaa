#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twins/errors.hpp"

namespace twins {

using Index = int;  // 1-based vertex index
using Color = int;  // palette value in [1..r]

// A total r-coloring of the edges of the complete graph on [1..n].
// Stored as a dense upper-triangular array, row-major over i < j.
class EdgeColoring {
 public:
  EdgeColoring() = default;

  // Every edge gets `fill`.
  EdgeColoring(int n, int r, Color fill = 1) : n_(n), r_(r) {
    if (n < 0) throw ArgumentError("EdgeColoring: negative vertex count");
    if (r < 1) throw ArgumentError("EdgeColoring: palette size must be >= 1");
    check_color(fill);
    colors_.assign(edge_count(n), static_cast<std::uint16_t>(fill));
  }

  // `colors` is listed in upper-triangular order: {1,2},{1,3},...,{n-1,n}.
  EdgeColoring(int n, int r, std::span<const Color> colors) : n_(n), r_(r) {
    if (n < 0) throw ArgumentError("EdgeColoring: negative vertex count");
    if (r < 1) throw ArgumentError("EdgeColoring: palette size must be >= 1");
    if (colors.size() != edge_count(n))
      throw ArgumentError("EdgeColoring: expected " +
                          std::to_string(edge_count(n)) + " colors, got " +
                          std::to_string(colors.size()));
    colors_.reserve(colors.size());
    for (Color c : colors) {
      check_color(c);
      colors_.push_back(static_cast<std::uint16_t>(c));
    }
  }

  static std::size_t edge_count(int n) {
    return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
  }

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }

  Color operator()(Index i, Index j) const {
    return colors_[slot(i, j)];
  }

  // Unchecked lookup for hot loops; requires 1 <= i < j <= n.
  Color at_ordered(Index i, Index j) const noexcept {
    return colors_[offset(i, j)];
  }

  void set(Index i, Index j, Color c) {
    check_color(c);
    colors_[slot(i, j)] = static_cast<std::uint16_t>(c);
  }

  // Raw colors in upper-triangular order.
  std::vector<Color> colors() const {
    return {colors_.begin(), colors_.end()};
  }

  friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

 private:
  std::size_t offset(Index i, Index j) const noexcept {
    // rows 1..i-1 hold (n-1) + (n-2) + ... + (n-i+1) entries
    auto ii = static_cast<std::size_t>(i - 1);
    return ii * (2 * static_cast<std::size_t>(n_) - ii - 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
  }

  std::size_t slot(Index i, Index j) const {
    if (i == j)
      throw ArgumentError("EdgeColoring: no edge {" + std::to_string(i) + "," +
                          std::to_string(j) + "}");
    if (i < 1 || j < 1 || i > n_ || j > n_)
      throw ArgumentError("EdgeColoring: index out of range [1," +
                          std::to_string(n_) + "]");
    if (i > j) std::swap(i, j);
    return offset(i, j);
  }

  void check_color(Color c) const {
    if (c < 1 || c > r_)
      throw ArgumentError("EdgeColoring: color " + std::to_string(c) +
                          " outside [1," + std::to_string(r_) + "]");
  }

  int n_ = 0;
  int r_ = 1;
  std::vector<std::uint16_t> colors_;
};

inline Color get_color(const EdgeColoring& c, Index i, Index j) {
  return c(i, j);
}

// Two index lists; a candidate twin. Validity is checked by validate_twin.
struct TwinPair {
  std::vector<Index> first;   // I
  std::vector<Index> second;  // J

  std::size_t size() const noexcept { return first.size(); }
  bool empty() const noexcept { return first.empty() && second.empty(); }

  friend bool operator==(const TwinPair&, const TwinPair&) = default;
};

// Outcome of a twin-style validity check. `index` carries the offending
// vertex for overlaps / ordering faults; `position` the 1-based t at which a
// consecutive-pair condition first fails.
struct Verdict {
  enum class Kind {
    valid,
    size_mismatch,
    not_increasing,
    overlap,
    mismatch,
  };

  Kind kind = Kind::valid;
  Index index = 0;
  int position = 0;

  bool ok() const noexcept { return kind == Kind::valid; }
  explicit operator bool() const noexcept { return ok(); }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::valid:
      return "valid";
    case Verdict::Kind::size_mismatch:
      return "size mismatch";
    case Verdict::Kind::not_increasing:
      return "not strictly increasing at index " + std::to_string(v.index);
    case Verdict::Kind::overlap:
      return "overlap at index " + std::to_string(v.index);
    case Verdict::Kind::mismatch:
      return "mismatch at t=" + std::to_string(v.position);
  }
  return "unknown";
}

namespace detail {

inline void check_indices(std::span<const Index> s, int n, const char* who) {
  for (Index i : s)
    if (i < 1 || i > n)
      throw ArgumentError(std::string(who) + ": index " + std::to_string(i) +
                          " outside [1," + std::to_string(n) + "]");
}

// Shared structural part of every twin notion: equal size, strictly
// increasing, disjoint. Returns valid if all hold.
inline Verdict check_twin_shape(std::span<const Index> a,
                                std::span<const Index> b) {
  if (a.size() != b.size()) return {Verdict::Kind::size_mismatch, 0, 0};
  for (auto s : {a, b})
    for (std::size_t t = 1; t < s.size(); ++t)
      if (s[t] <= s[t - 1]) return {Verdict::Kind::not_increasing, s[t], 0};
  // both sorted: merge-scan for a shared index
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p] == b[q]) return {Verdict::Kind::overlap, a[p], 0};
    if (a[p] < b[q])
      ++p;
    else
      ++q;
  }
  return {};
}

}  // namespace detail

inline Verdict validate_twin(const EdgeColoring& c, const TwinPair& t) {
  detail::check_indices(t.first, c.n(), "validate_twin");
  detail::check_indices(t.second, c.n(), "validate_twin");
  if (auto v = detail::check_twin_shape(t.first, t.second); !v) return v;
  for (std::size_t s = 0; s + 1 < t.first.size(); ++s) {
    if (c.at_ordered(t.first[s], t.first[s + 1]) !=
        c.at_ordered(t.second[s], t.second[s + 1]))
      return {Verdict::Kind::mismatch, 0, static_cast<int>(s + 1)};
  }
  return {};
}

// A 2-set {lo < hi}.
struct Edge {
  Index lo = 0;
  Index hi = 0;

  Edge() = default;
  Edge(Index a, Index b) : lo(std::min(a, b)), hi(std::max(a, b)) {
    if (a == b)
      throw ArgumentError("Edge: a 2-set needs distinct entries, got " +
                          std::to_string(a) + " twice");
  }

  bool contains(Index v) const noexcept { return v == lo || v == hi; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Two ordered pairs p = (x1, x2), q = (y1, y2): x1 is paired with y1 and x2
// with y2, i.e. the edges {x1,y1} and {x2,y2}.
struct MatchOrientation {
  std::pair<Index, Index> p;
  std::pair<Index, Index> q;

  MatchOrientation() = default;
  MatchOrientation(std::pair<Index, Index> p_, std::pair<Index, Index> q_)
      : p(p_), q(q_) {
    if (p.first == p.second || q.first == q.second)
      throw ArgumentError("MatchOrientation: pairs must be genuine 2-sets");
  }

  // Swap the roles of the two 2-sets.
  MatchOrientation transposed() const { return {q, p}; }

  friend bool operator==(const MatchOrientation&,
                         const MatchOrientation&) = default;
};

inline bool is_c_matching(const EdgeColoring& c, std::pair<Index, Index> p,
                          std::pair<Index, Index> q) {
  if (p.first == q.first || p.second == q.second)
    throw ArgumentError("is_c_matching: degenerate edge");
  return c(p.first, q.first) == c(p.second, q.second);
}

inline bool is_c_matching(const EdgeColoring& c, const MatchOrientation& o) {
  return is_c_matching(c, o.p, o.q);
}

// Tries min(u)<->min(v) first, then min(u)<->max(v).
inline std::optional<MatchOrientation> find_matchable_orientation(
    const EdgeColoring& c, Edge u, Edge v) {
  if (u.contains(v.lo) || u.contains(v.hi))
    throw ArgumentError("find_matchable_orientation: 2-sets overlap");
  if (c(u.lo, v.lo) == c(u.hi, v.hi))
    return MatchOrientation{{u.lo, u.hi}, {v.lo, v.hi}};
  if (c(u.lo, v.hi) == c(u.hi, v.lo))
    return MatchOrientation{{u.lo, u.hi}, {v.hi, v.lo}};
  return std::nullopt;
}

// Appends one element to each side of `t`. `o.p` must order the two maxima
// of t, `o.q` must order v; each maximum is paired with its partner in v.
inline TwinPair extend_twin(const EdgeColoring& c, const TwinPair& t, Edge v,
                            const MatchOrientation& o) {
  if (t.first.empty() || t.second.empty())
    throw PreconditionError("extend_twin: twin must have size >= 1");
  if (auto ok = validate_twin(c, t); !ok)
    throw PreconditionError("extend_twin: input is not a twin (" +
                            to_string(ok) + ")");
  Index mi = t.first.back(), mj = t.second.back();
  if (v.lo <= std::max(mi, mj))
    throw PreconditionError("extend_twin: min(v) must exceed max(u)");
  if (Edge(o.q.first, o.q.second) != v)
    throw PreconditionError("extend_twin: orientation does not order v");
  Index next_i = 0, next_j = 0;
  if (o.p == std::pair{mi, mj}) {
    next_i = o.q.first;
    next_j = o.q.second;
  } else if (o.p == std::pair{mj, mi}) {
    next_i = o.q.second;
    next_j = o.q.first;
  } else {
    throw PreconditionError("extend_twin: orientation does not order u");
  }
  if (!is_c_matching(c, o))
    throw PreconditionError("extend_twin: orientation is not a c-matching");
  TwinPair out = t;
  out.first.push_back(next_i);
  out.second.push_back(next_j);
  return out;
}

// sigma[k-1] is the image of color k.
inline EdgeColoring relabel_palette(const EdgeColoring& c,
                                    std::span<const Color> sigma) {
  if (static_cast<int>(sigma.size()) != c.r())
    throw ArgumentError("relabel_palette: bijection must cover [1..r]");
  std::vector<bool> seen(sigma.size() + 1, false);
  for (Color s : sigma) {
    if (s < 1 || s > c.r() || seen[s])
      throw ArgumentError("relabel_palette: sigma is not a bijection");
    seen[s] = true;
  }
  auto colors = c.colors();
  for (auto& col : colors) col = sigma[col - 1];
  return EdgeColoring(c.n(), c.r(), colors);
}

// The coloring seen through i -> n+1-i.
inline EdgeColoring reverse_indices(const EdgeColoring& c) {
  EdgeColoring out(c.n(), c.r());
  for (Index i = 1; i <= c.n(); ++i)
    for (Index j = i + 1; j <= c.n(); ++j)
      out.set(c.n() + 1 - j, c.n() + 1 - i, c.at_ordered(i, j));
  return out;
}

}  // namespace twins
