#include <gtest/gtest.h>

#include <sstream>

#include "twins/io.hpp"
#include "twins/random.hpp"

using namespace twins;

template <typename Read>
void expect_parse_error(const std::string& text, Read read) {
  std::istringstream in(text);
  EXPECT_THROW(read(in), ParseError) << text;
}

TEST(ColoringFormat, RoundTrip) {
  for (int n : {0, 1, 2, 7}) {
    auto c = random_coloring(n, 3, 17 + n);
    std::stringstream ss;
    write_coloring(ss, c);
    EXPECT_EQ(read_coloring(ss), c);
  }
}

TEST(ColoringFormat, AcceptsAnyLineOrder) {
  std::istringstream in("3 2\n2 3 2\n1 3 1\n1 2 2\n");
  auto c = read_coloring(in);
  EXPECT_EQ(c(1, 2), 2);
  EXPECT_EQ(c(2, 3), 2);
  EXPECT_EQ(c(1, 3), 1);
}

TEST(ColoringFormat, Rejections) {
  auto read = [](std::istream& in) { return read_coloring(in); };
  expect_parse_error("", read);
  expect_parse_error("3", read);
  expect_parse_error("3 0", read);
  expect_parse_error("3 2\n1 2 1\n1 3 1\n", read);              // missing line
  expect_parse_error("3 2\n1 2 1\n1 3 1\n2 3 3\n", read);       // color out of range
  expect_parse_error("3 2\n2 1 1\n1 3 1\n2 3 1\n", read);       // i > j
  expect_parse_error("3 2\n1 2 1\n1 2 1\n2 3 1\n", read);       // duplicate
  expect_parse_error("3 2\n1 2 1\n1 3 1\n2 3 1\n1 2 1\n", read);  // trailing
  expect_parse_error("3 2\n1 2 x\n1 3 1\n2 3 1\n", read);
  expect_parse_error("3 2\n1 4 1\n1 3 1\n2 3 1\n", read);
}

TEST(StringFormat, RoundTripAndRejections) {
  auto x = random_string(9, 3, 4);
  std::stringstream ss;
  write_string(ss, x);
  EXPECT_EQ(read_string(ss).letters(), x.letters());
  auto read = [](std::istream& in) { return read_string(in); };
  expect_parse_error("2 3\n1 2\n", read);
  expect_parse_error("2 2\n1 3\n", read);
  expect_parse_error("2 2\n1 1 1\n", read);
  expect_parse_error("2 -1\n", read);
}

TEST(PermutationFormat, RoundTripAndRejections) {
  auto p = random_permutation(11, 4);
  std::stringstream ss;
  write_permutation(ss, p);
  EXPECT_EQ(read_permutation(ss), p);
  auto read = [](std::istream& in) { return read_permutation(in); };
  expect_parse_error("3\n1 1 2\n", read);
  expect_parse_error("3\n1 2\n", read);
  expect_parse_error("2\n1 2 3\n", read);
}

TEST(TwinFormat, TextAndJson) {
  TwinPair t{{1, 4, 6}, {2, 5, 9}};
  std::stringstream ss;
  write_twin(ss, t);
  EXPECT_EQ(ss.str(), "1 4 6\n2 5 9\n");
  EXPECT_EQ(read_twin(ss), t);
  EXPECT_EQ(twin_from_json(to_json(t)), t);
  std::stringstream empty;
  write_twin(empty, TwinPair{});
  EXPECT_EQ(read_twin(empty), TwinPair{});
  std::istringstream bad("1 2\n3 x\n");
  EXPECT_THROW(read_twin(bad), ParseError);
  std::istringstream one_line("1 2\n");
  EXPECT_THROW(read_twin(one_line), ParseError);
  EXPECT_THROW(twin_from_json(nlohmann::json{{"I", {1}}}), ParseError);
}

TEST(CompositeSpecJson, RoundTrip) {
  auto s = random_composite_spec(4, 5, 12);
  auto j = to_json(s);
  EXPECT_EQ(j["r_star"], 2);
  EXPECT_EQ(j["R"], 16);
  auto back = composite_spec_from_json(j);
  EXPECT_EQ(composite_coloring(back), composite_coloring(s));
  j["r"] = 3;
  EXPECT_THROW(composite_spec_from_json(j), ParseError);
  EXPECT_THROW(composite_spec_from_json(nlohmann::json::object()), ParseError);
}

TEST(BlockProfileJson, RoundTrip) {
  BlockProfile p(LetterString(2, {1, 2}));
  auto j = to_json(p);
  EXPECT_EQ(j["length"], 12);
  EXPECT_EQ(j["weights"], (std::vector<int>{3, 9}));
  EXPECT_EQ(j["prefix"], (std::vector<int>{0, 3, 12}));
  auto back = block_profile_from_json(j);
  EXPECT_EQ(back.length(), 12);
  EXPECT_THROW(block_profile_from_json(nlohmann::json{{"r", 1}, {"x", {2}}}), ParseError);
}

TEST(Files, SaveAndLoad) {
  auto path = testing::TempDir() + "/coloring.txt";
  auto c = random_coloring(6, 2, 1);
  save_file(path, write_coloring, c);
  EXPECT_EQ(load_file(path, read_coloring), c);
  EXPECT_THROW(load_file(testing::TempDir() + "/missing/none.txt", read_coloring),
               std::runtime_error);
}
