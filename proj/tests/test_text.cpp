#include "doctest.h"

#include <stdexcept>

#include "aces/text.hpp"

using namespace aces;

TEST_CASE("utf8 round trip across scripts") {
  for (const std::string s : {"hello", "Müller stieß später dazu", "Η πόλη είναι παλιά",
                              "यह पुल पुराना है।", "図書館は静かだ。", "«guillemets» – ‘quotes’"}) {
    CHECK(text::encode_utf8(text::decode_utf8(s)) == s);
  }
}

TEST_CASE("utf8 rejects malformed input") {
  CHECK_THROWS_AS(text::decode_utf8(std::string("\x80")), std::invalid_argument);
  CHECK_THROWS_AS(text::decode_utf8(std::string("\xC3")), std::invalid_argument);
  CHECK_THROWS_AS(text::decode_utf8(std::string("\xC0\xAF")), std::invalid_argument);  // overlong
  CHECK_THROWS_AS(text::decode_utf8(std::string("\xED\xA0\x80")), std::invalid_argument);  // surrogate
}

TEST_CASE("codepoint offsets index scalars, not bytes") {
  std::string s = "naïve Straße";
  CHECK(text::codepoint_length(s) == 12);
  CHECK(text::substr_codepoints(s, 0, 5) == "naïve");
  CHECK(text::substr_codepoints(s, 6, 12) == "Straße");
  CHECK(text::byte_offset(s, 12) == s.size());
  CHECK_THROWS_AS(text::byte_offset(s, 13), std::out_of_range);
}

TEST_CASE("punctuation class covers the scripts in the corpus") {
  for (char32_t c : std::u32string(U".,;:!?\"'()[]«»„“”‚‘’—…。、।")) {
    CAPTURE(static_cast<int>(c));
    CHECK(text::is_punct(c));
  }
  for (char32_t c : std::u32string(U"aZ9äßπ村н ")) {
    CAPTURE(static_cast<int>(c));
    CHECK_FALSE(text::is_punct(c));
  }
}

TEST_CASE("bleu tokenizer splits punctuation into single tokens") {
  auto toks = text::bleu_tokens("He said: \"Stop, now!\"");
  std::vector<std::string> want = {"He", "said", ":", "\"", "Stop", ",", "now", "!", "\""};
  CHECK(toks == want);
  CHECK(text::bleu_tokens("  ") == std::vector<std::string>{});
}

TEST_CASE("whitespace handling helpers") {
  CHECK(text::trim("  hallo \t") == "hallo");
  CHECK(text::remove_whitespace("a b\tc\nd") == "abcd");
  CHECK(text::collapse_spaces("a   b  c") == "a b c");
  CHECK(text::collapse_spaces("Es  regnet .") == "Es regnet.");
  CHECK(text::collapse_spaces("  regnet") == "regnet");
  std::vector<std::string> want = {"ein", "zwei"};
  CHECK(text::whitespace_tokens(" ein  zwei ") == want);
}

TEST_CASE("capitalization matching") {
  CHECK(text::match_capitalization("Es", "er") == "Er");
  CHECK(text::match_capitalization("es", "Er") == "er");
  CHECK(text::match_capitalization("Madonna", "garza") == "Garza");
  CHECK(text::starts_with_uppercase("Über"));
  CHECK_FALSE(text::starts_with_uppercase("über"));
}

TEST_CASE("replace_first replaces only the first occurrence") {
  CHECK(*text::replace_first("a b a", "a", "x") == "x b a");
  CHECK_FALSE(text::replace_first("a b", "z", "x").has_value());
}
