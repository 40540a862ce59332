#include "aces/text.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace aces::text {

namespace {

[[noreturn]] void bad_utf8(std::size_t at) {
  throw std::invalid_argument("invalid UTF-8 at byte " + std::to_string(at));
}

}  // namespace

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      bad_utf8(i);
    }
    if (i + len > s.size()) bad_utf8(i);
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) bad_utf8(i + k);
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and surrogate values.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) bad_utf8(i);
    if (cp >= 0xD800 && cp <= 0xDFFF) bad_utf8(i);
    if (cp > 0x10FFFF) bad_utf8(i);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) out += encode_utf8(c);
  return out;
}

std::size_t codepoint_length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::size_t byte_offset(std::string_view s, std::size_t cp_index) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) continue;
    if (seen == cp_index) return i;
    ++seen;
  }
  if (seen == cp_index) return s.size();
  throw std::out_of_range("codepoint index " + std::to_string(cp_index) + " past end of string");
}

std::string substr_codepoints(std::string_view s, std::size_t begin, std::size_t end) {
  std::size_t b = byte_offset(s, begin);
  std::size_t e = byte_offset(s, end);
  return std::string(s.substr(b, e - b));
}

bool is_space(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

namespace {

struct Range {
  char32_t lo, hi;
};

// Unicode general category P, Basic Multilingual Plane.
constexpr std::array<Range, 90> kPunctRanges = {{
    {0x0021, 0x0023}, {0x0025, 0x002A}, {0x002C, 0x002F}, {0x003A, 0x003B},
    {0x003F, 0x0040}, {0x005B, 0x005D}, {0x005F, 0x005F}, {0x007B, 0x007B},
    {0x007D, 0x007D}, {0x00A1, 0x00A1}, {0x00A7, 0x00A7}, {0x00AB, 0x00AB},
    {0x00B6, 0x00B7}, {0x00BB, 0x00BB}, {0x00BF, 0x00BF}, {0x037E, 0x037E},
    {0x0387, 0x0387}, {0x055A, 0x055F}, {0x0589, 0x058A}, {0x05BE, 0x05BE},
    {0x05C0, 0x05C0}, {0x05C3, 0x05C3}, {0x05C6, 0x05C6}, {0x05F3, 0x05F4},
    {0x0609, 0x060A}, {0x060C, 0x060D}, {0x061B, 0x061B}, {0x061E, 0x061F},
    {0x066A, 0x066D}, {0x06D4, 0x06D4}, {0x0700, 0x070D}, {0x07F7, 0x07F9},
    {0x0830, 0x083E}, {0x085E, 0x085E}, {0x0964, 0x0965}, {0x0970, 0x0970},
    {0x09FD, 0x09FD}, {0x0A76, 0x0A76}, {0x0AF0, 0x0AF0}, {0x0C77, 0x0C77},
    {0x0C84, 0x0C84}, {0x0DF4, 0x0DF4}, {0x0E4F, 0x0E4F}, {0x0E5A, 0x0E5B},
    {0x0F04, 0x0F12}, {0x0F14, 0x0F14}, {0x0F3A, 0x0F3D}, {0x0F85, 0x0F85},
    {0x0FD0, 0x0FD4}, {0x0FD9, 0x0FDA}, {0x104A, 0x104F}, {0x10FB, 0x10FB},
    {0x1360, 0x1368}, {0x1400, 0x1400}, {0x166E, 0x166E}, {0x169B, 0x169C},
    {0x16EB, 0x16ED}, {0x1735, 0x1736}, {0x17D4, 0x17D6}, {0x17D8, 0x17DA},
    {0x1800, 0x180A}, {0x1944, 0x1945}, {0x1A1E, 0x1A1F}, {0x1AA0, 0x1AA6},
    {0x1AA8, 0x1AAD}, {0x1B5A, 0x1B60}, {0x1BFC, 0x1BFF}, {0x1C3B, 0x1C3F},
    {0x1C7E, 0x1C7F}, {0x1CC0, 0x1CC7}, {0x1CD3, 0x1CD3}, {0x2010, 0x2027},
    {0x2030, 0x2043}, {0x2045, 0x2051}, {0x2053, 0x205E}, {0x207D, 0x207E},
    {0x208D, 0x208E}, {0x2308, 0x230B}, {0x2329, 0x232A}, {0x2768, 0x2775},
    {0x27C5, 0x27C6}, {0x27E6, 0x27EF}, {0x2983, 0x2998}, {0x29D8, 0x29DB},
    {0x29FC, 0x29FD}, {0x2CF9, 0x2CFC}, {0x2CFE, 0x2CFF}, {0x2D70, 0x2D70},
    {0x2E00, 0x2E4F}, {0x3001, 0x3003},
}};

constexpr std::array<Range, 16> kPunctRangesHigh = {{
    {0x3008, 0x3011}, {0x3014, 0x301F}, {0x3030, 0x3030}, {0x303D, 0x303D},
    {0x30A0, 0x30A0}, {0x30FB, 0x30FB}, {0xA4FE, 0xA4FF}, {0xA60D, 0xA60F},
    {0xA673, 0xA673}, {0xA67E, 0xA67E}, {0xFD3E, 0xFD3F}, {0xFE10, 0xFE19},
    {0xFE30, 0xFE52}, {0xFE54, 0xFE61}, {0xFF01, 0xFF65}, {0x0000, 0x0000},
}};

bool in_ranges(char32_t c, const Range* begin, const Range* end) {
  auto it = std::upper_bound(begin, end, c, [](char32_t v, const Range& r) { return v < r.lo; });
  if (it == begin) return false;
  --it;
  return c >= it->lo && c <= it->hi;
}

}  // namespace

bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x23) || (c >= 0x25 && c <= 0x2A) || (c >= 0x2C && c <= 0x2F) ||
           (c >= 0x3A && c <= 0x3B) || (c >= 0x3F && c <= 0x40) || (c >= 0x5B && c <= 0x5D) ||
           c == 0x5F || c == 0x7B || c == 0x7D;
  }
  if (c <= 0x3003) return in_ranges(c, kPunctRanges.begin(), kPunctRanges.end());
  // FF01..FF65 includes a few fullwidth signs that are not category P, but
  // none of them appear in challenge-set text.
  return in_ranges(c, kPunctRangesHigh.begin(), kPunctRangesHigh.end() - 1);
}

bool is_ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }

std::string trim(std::string_view s) {
  std::u32string cp = decode_utf8(s);
  std::size_t b = 0, e = cp.size();
  while (b < e && is_space(cp[b])) ++b;
  while (e > b && is_space(cp[e - 1])) --e;
  return encode_utf8(std::u32string_view(cp).substr(b, e - b));
}

std::vector<std::string> whitespace_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::u32string cp = decode_utf8(s);
  std::u32string cur;
  for (char32_t c : cp) {
    if (is_space(c)) {
      if (!cur.empty()) {
        out.push_back(encode_utf8(cur));
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(encode_utf8(cur));
  return out;
}

std::vector<std::string> bleu_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::u32string cp = decode_utf8(s);
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(encode_utf8(cur));
      cur.clear();
    }
  };
  for (char32_t c : cp) {
    if (is_space(c)) {
      flush();
    } else if (is_punct(c)) {
      flush();
      out.push_back(encode_utf8(c));
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::string remove_whitespace(std::string_view s) {
  std::u32string cp = decode_utf8(s);
  std::u32string out;
  out.reserve(cp.size());
  for (char32_t c : cp) {
    if (!is_space(c)) out.push_back(c);
  }
  return encode_utf8(out);
}

std::string collapse_spaces(std::string_view s) {
  std::u32string cp = decode_utf8(s);
  std::u32string out;
  for (char32_t c : cp) {
    if (is_space(c)) {
      if (!out.empty() && out.back() != U' ') out.push_back(U' ');
    } else {
      // Drop the space a deletion may have left before , . ; : ? !
      if (!out.empty() && out.back() == U' ' &&
          (c == U',' || c == U'.' || c == U';' || c == U':' || c == U'?' || c == U'!')) {
        out.back() = c;
        continue;
      }
      out.push_back(c);
    }
  }
  while (!out.empty() && out.back() == U' ') out.pop_back();
  return encode_utf8(out);
}

std::optional<std::size_t> find_substring(std::string_view haystack, std::string_view needle) {
  std::size_t pos = haystack.find(needle);
  if (pos == std::string_view::npos) return std::nullopt;
  return pos;
}

std::optional<std::string> replace_first(std::string_view s, std::string_view from, std::string_view to) {
  auto pos = find_substring(s, from);
  if (!pos) return std::nullopt;
  std::string out(s.substr(0, *pos));
  out += to;
  out += s.substr(*pos + from.size());
  return out;
}

bool starts_with_uppercase(std::string_view word) {
  if (word.empty()) return false;
  std::u32string cp = decode_utf8(word);
  char32_t c = cp[0];
  if (c >= U'A' && c <= U'Z') return true;
  return c >= 0xC0 && c <= 0xDE && c != 0xD7;  // Latin-1 uppercase
}

std::string match_capitalization(std::string_view pattern, std::string_view word) {
  if (word.empty()) return std::string(word);
  std::u32string cp = decode_utf8(word);
  char32_t c = cp[0];
  if (starts_with_uppercase(pattern)) {
    if (c >= U'a' && c <= U'z') cp[0] = c - 0x20;
  } else {
    if (c >= U'A' && c <= U'Z') cp[0] = c + 0x20;
  }
  return encode_utf8(cp);
}

}  // namespace aces::text
