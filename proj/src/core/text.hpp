#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace paperjson::text {

// Lenient UTF-8 decoding: malformed bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t cp);

// ﬁ→fi, ﬂ→fl, ﬀ→ff, ﬃ→ffi, ﬄ→ffl.
std::string expand_ligatures(std::string_view s);

std::string trim(std::string_view s);

bool is_whitespace(char32_t cp);
// Cc/Cf control and format characters plus U+FFFD.
bool is_unprintable(char32_t cp);

// Joins line texts with single spaces. A line ending in '-' followed by a
// line starting with a lowercase letter is glued with the hyphen dropped.
std::string join_lines(const std::vector<std::string>& lines);
// Pairwise form of join_lines.
std::string join_two(std::string_view first, std::string_view second);

bool ends_with_terminal_punctuation(std::string_view s);
bool starts_with_lowercase(std::string_view s);

// Lowercase (ASCII), ligatures expanded, whitespace collapsed and trimmed.
std::string normalize_for_match(std::string_view s);

// Lowercase with every ASCII digit replaced by '#'.
std::string normalize_recurring(std::string_view s);

bool is_greek(char32_t cp);

}  // namespace paperjson::text
