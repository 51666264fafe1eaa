#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "twins/constructions.hpp"
#include "twins/core.hpp"
#include "twins/sequences.hpp"

namespace twins {

// Malformed input file or document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw ParseError(std::string("expected ") + what);
  return v;
}

inline void expect_end(std::istream& in, const char* what) {
  std::string extra;
  if (in >> extra) throw ParseError(std::string(what) + ": trailing data '" + extra + "'");
}

}  // namespace detail

// Coloring text format: "n r", then C(n,2) lines "i j color", i < j, each
// pair exactly once (any order).
inline void write_coloring(std::ostream& out, const EdgeColoring& c) {
  out << c.n() << ' ' << c.r() << '\n';
  for (Index i = 1; i <= c.n(); ++i)
    for (Index j = i + 1; j <= c.n(); ++j)
      out << i << ' ' << j << ' ' << c.at_ordered(i, j) << '\n';
}

inline EdgeColoring read_coloring(std::istream& in) {
  const int n = detail::read_value<int>(in, "vertex count n");
  const int r = detail::read_value<int>(in, "palette size r");
  if (n < 0 || r < 1) throw ParseError("coloring: bad header");
  const std::size_t edges = EdgeColoring::edge_count(n);
  std::vector<Color> colors(edges, 0);
  for (std::size_t e = 0; e < edges; ++e) {
    const int i = detail::read_value<int>(in, "edge line 'i j color'");
    const int j = detail::read_value<int>(in, "edge line 'i j color'");
    const int col = detail::read_value<int>(in, "edge line 'i j color'");
    if (!(1 <= i && i < j && j <= n))
      throw ParseError("coloring: need 1 <= i < j <= n, got " + std::to_string(i) +
                       " " + std::to_string(j));
    if (col < 1 || col > r)
      throw ParseError("coloring: color " + std::to_string(col) + " outside [1,r]");
    const auto slot = static_cast<std::size_t>(i - 1) * (2 * n - i) / 2 +
                      static_cast<std::size_t>(j - i - 1);
    if (colors[slot] != 0)
      throw ParseError("coloring: duplicate pair " + std::to_string(i) + " " +
                       std::to_string(j));
    colors[slot] = col;
  }
  detail::expect_end(in, "coloring");
  return EdgeColoring(n, r, colors);
}

// String format: "r n" then n letters.
inline void write_string(std::ostream& out, const LetterString& x) {
  out << x.r() << ' ' << x.size() << '\n';
  for (int i = 1; i <= x.size(); ++i) out << x(i) << (i == x.size() ? '\n' : ' ');
  if (x.size() == 0) out << '\n';
}

inline LetterString read_string(std::istream& in) {
  const int r = detail::read_value<int>(in, "palette size r");
  const int n = detail::read_value<int>(in, "length n");
  if (n < 0) throw ParseError("string: negative length");
  std::vector<int> letters(static_cast<std::size_t>(n));
  for (auto& l : letters) l = detail::read_value<int>(in, "letter");
  detail::expect_end(in, "string");
  try {
    return LetterString(r, std::move(letters));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

// Permutation format: "n" then n values.
inline void write_permutation(std::ostream& out, const Permutation& p) {
  out << p.size() << '\n';
  for (int i = 1; i <= p.size(); ++i) out << p(i) << (i == p.size() ? '\n' : ' ');
  if (p.size() == 0) out << '\n';
}

inline Permutation read_permutation(std::istream& in) {
  const int n = detail::read_value<int>(in, "length n");
  if (n < 0) throw ParseError("permutation: negative length");
  std::vector<int> values(static_cast<std::size_t>(n));
  for (auto& v : values) v = detail::read_value<int>(in, "value");
  detail::expect_end(in, "permutation");
  try {
    return Permutation(std::move(values));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

// Twin JSON: {"I": [...], "J": [...]}
inline nlohmann::json to_json(const TwinPair& t) {
  return {{"I", t.first}, {"J", t.second}};
}

inline TwinPair twin_from_json(const nlohmann::json& j) {
  try {
    return {j.at("I").get<std::vector<Index>>(), j.at("J").get<std::vector<Index>>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("twin: ") + e.what());
  }
}

// Twin text: two lines of indices.
inline void write_twin(std::ostream& out, const TwinPair& t) {
  for (const auto* side : {&t.first, &t.second}) {
    for (std::size_t k = 0; k < side->size(); ++k) out << (k ? " " : "") << (*side)[k];
    out << '\n';
  }
}

inline TwinPair read_twin(std::istream& in) {
  TwinPair t;
  std::string line;
  for (auto* side : {&t.first, &t.second}) {
    if (!std::getline(in, line)) throw ParseError("twin: expected two lines");
    std::istringstream ls(line);
    Index v;
    while (ls >> v) side->push_back(v);
    if (!ls.eof()) throw ParseError("twin: non-integer entry");
  }
  return t;
}

inline nlohmann::json to_json(const CompositeSpec& s) {
  std::vector<std::vector<int>> perms;
  for (const auto& p : s.perms) perms.push_back(p.values());
  return {{"r", s.r},
          {"r_star", s.half()},
          {"R", s.big()},
          {"m", s.m},
          {"x", s.x.letters()},
          {"y", s.y.letters()},
          {"perms", perms}};
}

inline CompositeSpec composite_spec_from_json(const nlohmann::json& j) {
  try {
    CompositeSpec s;
    s.r = j.at("r").get<int>();
    s.m = j.at("m").get<int>();
    s.x = LetterString(s.r / 2, j.at("x").get<std::vector<int>>());
    s.y = LetterString(s.r * s.r, j.at("y").get<std::vector<int>>());
    for (const auto& p : j.at("perms")) s.perms.emplace_back(p.get<std::vector<int>>());
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("composite spec: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("composite spec: ") + e.what());
  }
}

inline nlohmann::json to_json(const BlockProfile& p) {
  std::vector<int> weights, prefix;
  for (int k = 1; k <= p.blocks(); ++k) weights.push_back(p.weight(k));
  for (int k = 0; k <= p.blocks(); ++k) prefix.push_back(p.prefix(k));
  return {{"r", p.x().r()},
          {"x", p.x().letters()},
          {"weights", weights},
          {"prefix", prefix},
          {"length", p.length()}};
}

inline BlockProfile block_profile_from_json(const nlohmann::json& j) {
  try {
    return BlockProfile(LetterString(j.at("r").get<int>(), j.at("x").get<std::vector<int>>()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("block profile: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("block profile: ") + e.what());
  }
}

template <typename Write, typename T>
void save_file(const std::string& path, Write write, const T& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out, value);
}

template <typename Read>
auto load_file(const std::string& path, Read read) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read(in);
}

}  // namespace twins
