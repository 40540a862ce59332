#include "doctest.h"

#include "aces/tomlite.hpp"

using namespace aces;

TEST_CASE("tomlite parses the config subset") {
  const char* doc = R"(
# comment
threshold = 13.0
count = 42
flag = true
names = ["a", "b",
         "c"]  # multi-line array

[months.en]
full = ["January", "February"]

[[conversions]]
from = "feet"
factor = 0.3048

[[conversions]]
from = "miles"
factor = 1609.344
)";
  tomlite::Value root = tomlite::parse(doc, "test");
  CHECK(root.at("threshold").as_number() == 13.0);
  CHECK(root.at("count").as_integer() == 42);
  CHECK(root.at("flag").as_boolean());
  CHECK(root.at("names").as_array().size() == 3);
  CHECK(root.at("names").as_array()[2].as_string() == "c");
  CHECK(root.at("months").at("en").at("full").as_array()[1].as_string() == "February");
  const auto& conv = root.at("conversions").as_array();
  REQUIRE(conv.size() == 2);
  CHECK(conv[0].at("from").as_string() == "feet");
  CHECK(conv[1].at("factor").as_number() == 1609.344);
}

TEST_CASE("tomlite handles escapes and underscored numbers") {
  tomlite::Value root = tomlite::parse("s = \"a\\\"b\\n\"\nn = 1_000\n", "test");
  CHECK(root.at("s").as_string() == "a\"b\n");
  CHECK(root.at("n").as_integer() == 1000);
}

TEST_CASE("tomlite reports errors with line numbers") {
  CHECK_THROWS_WITH_AS(tomlite::parse("a = 1\na = 2\n", "cfg"),
                       doctest::Contains("cfg:2"), std::runtime_error);
  CHECK_THROWS_AS(tomlite::parse("s = \"open\n", "cfg"), std::runtime_error);
  CHECK_THROWS_AS(tomlite::parse("x = [1, 2\n", "cfg"), std::runtime_error);
  CHECK_THROWS_AS(tomlite::parse("x = nope\n", "cfg"), std::runtime_error);
}

TEST_CASE("typed accessors refuse wrong kinds") {
  tomlite::Value root = tomlite::parse("x = 3\n", "test");
  CHECK_THROWS_AS(root.at("x").as_string(), std::runtime_error);
  CHECK_THROWS_AS(root.at("missing"), std::runtime_error);
}
