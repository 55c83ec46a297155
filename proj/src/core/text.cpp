#include "core/text.hpp"

#include <cctype>

namespace paperjson::text {

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      out.push_back(U'�');
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= s.size()) {
        ok = false;
        break;
      }
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(U'�');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
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

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append_utf8(out, cp);
  return out;
}

std::string expand_ligatures(std::string_view s) {
  // Fast path: every ligature codepoint starts with 0xEF in UTF-8.
  if (s.find('\xEF') == std::string_view::npos) return std::string(s);
  std::string out;
  for (char32_t cp : decode_utf8(s)) {
    switch (cp) {
      case U'ﬀ': out += "ff"; break;
      case U'ﬁ': out += "fi"; break;
      case U'ﬂ': out += "fl"; break;
      case U'ﬃ': out += "ffi"; break;
      case U'ﬄ': out += "ffl"; break;
      default: append_utf8(out, cp);
    }
  }
  return out;
}

bool is_whitespace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0xA0 || cp == 0x2002 || cp == 0x2003 || cp == 0x2009 ||
         cp == 0x200A || cp == 0x202F || cp == 0x3000;
}

bool is_unprintable(char32_t cp) {
  if (cp < 0x20 || (cp >= 0x7F && cp <= 0x9F)) return true;
  if (cp == 0xFFFD || cp == 0xFEFF || cp == 0xAD) return true;
  if (cp >= 0x200B && cp <= 0x200F) return true;
  if (cp >= 0x2060 && cp <= 0x2064) return true;
  return false;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool starts_with_lowercase(std::string_view s) {
  const auto cps = decode_utf8(s.substr(0, std::min<std::size_t>(s.size(), 4)));
  if (cps.empty()) return false;
  const char32_t c = cps.front();
  if (c < 0x80) return c >= U'a' && c <= U'z';
  // Latin-1 lowercase letters and Greek lowercase.
  return (c >= 0xDF && c <= 0xFF && c != 0xF7) || (c >= 0x3B1 && c <= 0x3C9);
}

std::string join_two(std::string_view first, std::string_view second) {
  if (first.empty()) return std::string(second);
  if (second.empty()) return std::string(first);
  if (first.back() == '-' && starts_with_lowercase(second)) {
    std::string out(first.substr(0, first.size() - 1));
    out += second;
    return out;
  }
  std::string out(first);
  out += ' ';
  out += second;
  return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out = join_two(out, l);
  return out;
}

bool ends_with_terminal_punctuation(std::string_view s) {
  if (s.empty()) return false;
  const char c = s.back();
  return c == '.' || c == '!' || c == '?' || c == ':';
}

std::string normalize_for_match(std::string_view s) {
  const std::string expanded = expand_ligatures(s);
  std::string out;
  bool pending_space = false;
  for (char ch : expanded) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

std::string normalize_recurring(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isdigit(u)) {
      out.push_back('#');
    } else {
      out.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  return out;
}

bool is_greek(char32_t cp) { return cp >= 0x391 && cp <= 0x3C9; }

}  // namespace paperjson::text
