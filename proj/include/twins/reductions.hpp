#pragma once

#include "twins/core.hpp"
#include "twins/sequences.hpp"

namespace twins {

inline constexpr Color kAscentColor = 1;
inline constexpr Color kDescentColor = 2;

// Twins of the result are exactly the weak-twins of pi.
inline EdgeColoring coloring_from_permutation(const Permutation& pi) {
  const int n = pi.size();
  if (n < 2)
    throw ArgumentError("coloring_from_permutation: need at least 2 entries");
  EdgeColoring c(n, 2);
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j)
      c.set(i, j, pi(i) < pi(j) ? kAscentColor : kDescentColor);
  return c;
}

// c({i<j}) = x(i). (I, J) is a twin iff dropping both maxima leaves a
// string-twin of x.
inline EdgeColoring coloring_from_string(const LetterString& x) {
  const int n = x.size();
  if (n < 2) throw ArgumentError("coloring_from_string: need at least 2 letters");
  EdgeColoring c(n, x.r());
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j) c.set(i, j, x(i));
  return c;
}

}  // namespace twins
