#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>

#include "mrgrid/constructions.hpp"
#include "mrgrid/decoder.hpp"
#include "mrgrid/io.hpp"
#include "mrgrid/search.hpp"
#include "support.hpp"

using mrgrid::Field;
using mrgrid::GridCode;
using mrgrid::Pattern;
using mrgrid::io::Json;

TEST(Io, CellsAreOneBased) {
  EXPECT_EQ(mrgrid::io::to_json(mrgrid::Cell{0, 2}), Json::parse("[1, 3]"));
  EXPECT_EQ(mrgrid::io::cell_from_json(Json::parse("[2, 1]"), 2, 3), (mrgrid::Cell{1, 0}));
  EXPECT_THROW(mrgrid::io::cell_from_json(Json::parse("[0, 1]"), 2, 3), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::cell_from_json(Json::parse("[3, 1]"), 2, 3), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::cell_from_json(Json::parse("[1]"), 2, 3), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::cell_from_json(Json::parse("[1, -1]"), 2, 3), mrgrid::InvalidArgument);
  const Pattern e(2, 3, {{1, 2}, {0, 0}});
  EXPECT_EQ(mrgrid::io::to_json(e), Json::parse("[[1, 1], [2, 3]]"));
  EXPECT_EQ(mrgrid::io::pattern_from_json(mrgrid::io::to_json(e), 2, 3), e);
}

TEST(Io, CodeRoundTrip) {
  std::mt19937_64 rng(2);
  for (const GridCode& code : {mrgrid::construct_binary(3, 4), mrgrid::construct_bch_zero(3, 4, 2),
                               mrgrid::construct_ap3(4, 11), testing_support::random_code(Field::make(3, 2), 2, 3, 2, rng),
                               GridCode(Field::make(2, 1), 1, 2, 0)}) {
    const Json j = mrgrid::io::to_json(code);
    EXPECT_EQ(j.at("format"), 1);
    EXPECT_EQ(mrgrid::io::code_from_json(j), code);
    EXPECT_EQ(mrgrid::io::code_from_json(Json::parse(j.dump())), code);
  }
}

TEST(Io, CodeLayout) {
  const Json j = mrgrid::io::to_json(mrgrid::construct_binary(2, 2));
  EXPECT_EQ(j, Json::parse(R"({"format":1,"p":2,"d":1,"modulus":[0,1],"m":2,"n":2,"h":1,"gp":[[[0],[1]],[[0],[0]]]})"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"format", "p", "d", "modulus", "m", "n", "h", "gp"}));
}

TEST(Io, CodeValidation) {
  const Json good = mrgrid::io::to_json(mrgrid::construct_binary(2, 4));
  auto broken = [&](auto edit) {
    Json j = good;
    edit(j);
    return j;
  };
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j["format"] = 2; })), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j.erase("gp"); })), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j["m"] = 3; })), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j["h"] = 2; })), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j["gp"][0][0][0] = 4; })), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j["gp"][0][0][0] = -1; })), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j["modulus"] = Json::parse("[1, 0, 1]"); })),
               mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(broken([](Json& j) { j["modulus"] = Json::parse("[1, 1, 1, 1]"); })),
               mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::code_from_json(Json::parse("[]")), mrgrid::InvalidArgument);

  Json no_modulus = good;
  no_modulus.erase("modulus");
  no_modulus.erase("format");
  EXPECT_EQ(mrgrid::io::code_from_json(no_modulus), mrgrid::construct_binary(2, 4));
}

TEST(Io, WordRoundTrip) {
  const GridCode code = mrgrid::construct_binary(2, 4);
  const mrgrid::Codeword w = mrgrid::random_codeword(code, 9);
  const mrgrid::PartialWord p = mrgrid::erase(w, Pattern(2, 4, {{0, 1}, {1, 1}}));
  const Json j = mrgrid::io::word_json(p);
  EXPECT_TRUE(j.at("symbols")[1].is_null());
  EXPECT_TRUE(j.at("symbols")[5].is_null());
  EXPECT_EQ(mrgrid::io::word_from_json(j, code.field()), p);
  EXPECT_THROW(mrgrid::io::word_from_json(Json::parse(R"({"symbols":[1, 2, 99]})"), code.field()), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::word_from_json(Json::parse(R"({"symbols":"x"})"), code.field()), mrgrid::InvalidArgument);
}

TEST(Io, ReportShape) {
  const GridCode zero(Field::make(2, 1), 2, 2, 1);
  const Json bad = mrgrid::io::to_json(mrgrid::is_mr_cycle_criterion(zero));
  EXPECT_EQ(bad.at("is_mr"), false);
  EXPECT_EQ(bad.at("witness").at("pattern"), Json::parse("[[1,1],[1,2],[2,1],[2,2]]"));
  EXPECT_EQ(bad.at("witness").at("cycles"), Json::parse("[[[1,1],[2,1],[2,2],[1,2]]]"));
  EXPECT_EQ(bad.at("witness").at("cycle_sums"), Json::parse("[[0]]"));
  const Json good = mrgrid::io::to_json(mrgrid::is_mr_cycle_criterion(mrgrid::construct_binary(2, 2)));
  EXPECT_EQ(good.at("is_mr"), true);
  EXPECT_TRUE(good.at("witness").is_null());
}

TEST(Io, SearchShape) {
  const auto r = mrgrid::min_field_size_search(2, 3, 1, 5, mrgrid::SearchFamily::kGeneric);
  const Json j = mrgrid::io::to_json(r);
  EXPECT_EQ(j.at("q"), 3);
  EXPECT_EQ(j.at("steps")[0].at("outcome"), "none");
  EXPECT_EQ(j.at("steps")[1].at("outcome"), "found");
  EXPECT_EQ(mrgrid::io::code_from_json(j.at("code")), *r.code);
}

TEST(Io, Files) {
  const auto path = std::filesystem::temp_directory_path() / "mrgrid_test_io.json";
  const GridCode code = mrgrid::construct_bch_zero(2, 4, 2);
  mrgrid::io::write_file(path.string(), mrgrid::io::to_json(code));
  EXPECT_EQ(mrgrid::io::code_from_json(mrgrid::io::read_file(path.string())), code);
  std::filesystem::remove(path);
  EXPECT_THROW(mrgrid::io::read_file(path.string()), mrgrid::InvalidArgument);
  EXPECT_THROW(mrgrid::io::parse("{not json", "inline"), mrgrid::InvalidArgument);
}
