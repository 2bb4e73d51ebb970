#include "hcdeval/tokenize.hpp"

#include <cstdint>

namespace hcdeval::text {

namespace {

struct CodePoint {
  char32_t cp;
  std::size_t offset;
  std::size_t length;
};

std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = 0xFFFD;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 >> 5) == 0x6) {
      len = 2;
    } else if ((b0 >> 4) == 0xE) {
      len = 3;
    } else if ((b0 >> 3) == 0x1E) {
      len = 4;
    }
    if (len > 1) {
      if (i + len > s.size()) {
        len = 1;
      } else {
        cp = b0 & (0x7F >> len);
        for (std::size_t k = 1; k < len; ++k) {
          const auto b = static_cast<unsigned char>(s[i + k]);
          if ((b >> 6) != 0x2) {
            cp = 0xFFFD;
            len = 1;
            break;
          }
          cp = (cp << 6) | (b & 0x3F);
        }
      }
    }
    out.push_back({cp, i, len});
    i += len;
  }
  return out;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t fold(char32_t c) noexcept {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0x80) return c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x137 && c % 2 == 0) return c + 1;
  if (c >= 0x139 && c <= 0x148 && c % 2 == 1) return c + 1;
  if (c >= 0x14A && c <= 0x177 && c % 2 == 0) return c + 1;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

enum class Kind { Word, Apostrophe, Hyphen, DigitSeparator, Terminal, Other };

bool is_symbol_or_space(char32_t c) {
  if (c >= 0x80 && c <= 0xBF) return c != 0xAA && c != 0xB5 && c != 0xBA;
  if (c == 0xD7 || c == 0xF7) return true;
  if (c == 0x1680) return true;
  if (c >= 0x2000 && c <= 0x2BFF) return true;
  if (c >= 0x2E00 && c <= 0x2E7F) return true;
  if (c >= 0x3000 && c <= 0x303F) return true;
  if (c >= 0xFE00 && c <= 0xFE0F) return true;
  if (c >= 0xFE10 && c <= 0xFE1F) return true;
  if (c >= 0xFE30 && c <= 0xFE6F) return true;
  if (c >= 0xFF01 && c <= 0xFF0F) return true;
  if (c >= 0xFF1A && c <= 0xFF20) return true;
  if (c >= 0xFF3B && c <= 0xFF40) return true;
  if (c >= 0xFF5B && c <= 0xFF65) return true;
  if (c >= 0x1F000 && c <= 0x1FAFF) return true;
  return c == 0xFFFD;
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

Kind classify(char32_t c) {
  if (c < 0x80) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c)) return Kind::Word;
    if (c == '\'') return Kind::Apostrophe;
    if (c == '-') return Kind::Hyphen;
    if (c == '.' || c == '!' || c == '?') return Kind::Terminal;
    if (c == ',') return Kind::DigitSeparator;
    return Kind::Other;
  }
  if (c == 0x2019) return Kind::Apostrophe;
  if (c == 0x2010 || c == 0x2011) return Kind::Hyphen;
  if (c == 0x2026 || c == 0x3002 || c == 0xFF01 || c == 0xFF1F) return Kind::Terminal;
  return is_symbol_or_space(c) ? Kind::Other : Kind::Word;
}

}  // namespace

std::string to_lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (const auto& c : decode(utf8)) {
    if (c.cp == 0xFFFD && c.length == 1 && static_cast<unsigned char>(utf8[c.offset]) >= 0x80) {
      out.push_back(utf8[c.offset]);
      continue;
    }
    encode(fold(c.cp), out);
  }
  return out;
}

std::size_t codepoint_count(std::string_view utf8) { return decode(utf8).size(); }

std::u32string decode_utf8(std::string_view utf8) {
  std::u32string out;
  for (const auto& c : decode(utf8)) out.push_back(c.cp);
  return out;
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  for (char32_t c : cps) encode(c, out);
  return out;
}

char32_t fold_case(char32_t c) noexcept { return fold(c); }

TokenizedText tokenize(std::string_view text, std::string record_id) {
  TokenizedText out;
  out.record_id = std::move(record_id);
  const auto cps = decode(text);
  const std::size_t n = cps.size();
  std::size_t sentence_begin = 0;

  auto close_sentence = [&] {
    if (out.tokens.size() > sentence_begin) {
      out.sentence_spans.emplace_back(sentence_begin, out.tokens.size());
      sentence_begin = out.tokens.size();
    }
  };

  std::size_t i = 0;
  while (i < n) {
    const Kind k = classify(cps[i].cp);
    if (k == Kind::Terminal) {
      // "3.5" is handled inside words; a terminal here ends the sentence.
      close_sentence();
      ++i;
      continue;
    }
    if (k != Kind::Word) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n) {
      const Kind kj = classify(cps[j].cp);
      if (kj == Kind::Word) {
        ++j;
        continue;
      }
      const bool next_is_word = j + 1 < n && classify(cps[j + 1].cp) == Kind::Word;
      if ((kj == Kind::Apostrophe || kj == Kind::Hyphen) && next_is_word) {
        j += 2;
        continue;
      }
      const bool digit_bridge = is_digit(cps[j - 1].cp) && j + 1 < n && is_digit(cps[j + 1].cp);
      if ((cps[j].cp == '.' || cps[j].cp == ',') && digit_bridge) {
        j += 2;
        continue;
      }
      break;
    }
    const std::size_t begin = cps[i].offset;
    const std::size_t end = cps[j - 1].offset + cps[j - 1].length;
    out.tokens.push_back(to_lower(text.substr(begin, end - begin)));
    i = j;
  }
  close_sentence();
  return out;
}

}  // namespace hcdeval::text
