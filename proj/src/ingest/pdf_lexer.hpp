#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "ingest/pdf_object.hpp"

namespace paperjson::pdf {

enum class TokenKind {
  end,
  integer,
  real,
  name,
  string,
  array_begin,
  array_end,
  dict_begin,
  dict_end,
  keyword,
};

struct LexToken {
  TokenKind kind = TokenKind::end;
  std::string text;  // decoded bytes for strings/names, spelling otherwise
  std::int64_t integer = 0;
  double real = 0.0;
};

bool is_pdf_whitespace(char c);
bool is_pdf_delimiter(char c);

class Lexer {
 public:
  explicit Lexer(std::string_view data, std::size_t pos = 0) : data_(data), pos_(pos) {}

  LexToken next();
  LexToken peek();

  std::size_t position() const { return pos_; }
  void seek(std::size_t pos) {
    pos_ = pos;
    peeked_.reset();
  }
  std::string_view data() const { return data_; }
  void skip_whitespace();

 private:
  LexToken read_string();
  LexToken read_hex_string();
  LexToken read_name();
  LexToken read_number_or_keyword();

  std::string_view data_;
  std::size_t pos_;
  std::optional<LexToken> peeked_;
  std::size_t peeked_end_ = 0;
};

// Resolves /Length references while reading a stream body.
using LengthResolver = std::function<std::optional<std::int64_t>(const Object&)>;

// Recursive-descent object parser on top of the lexer. Understands "N G R"
// references and, when reading top-level file objects, stream bodies.
class Parser {
 public:
  explicit Parser(Lexer& lexer, LengthResolver resolver = {})
      : lexer_(lexer), resolver_(std::move(resolver)) {}

  // Throws Error(pdf_parse) on malformed input.
  Object parse_object(bool allow_stream = false);

  // Parses "N G obj ... endobj" at the current position.
  Object parse_indirect(int* num = nullptr, int* gen = nullptr);

  // Builds an object whose first token has already been read.
  Object parse_from(LexToken tok, bool allow_stream = false);

 private:
  Object read_stream_body(Dict dict);

  Lexer& lexer_;
  LengthResolver resolver_;
  int depth_ = 0;
};

}  // namespace paperjson::pdf
