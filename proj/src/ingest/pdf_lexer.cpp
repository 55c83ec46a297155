#include "ingest/pdf_lexer.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "core/error.hpp"

namespace paperjson::pdf {

namespace {

constexpr int kMaxDepth = 256;

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void fail(const std::string& what, std::size_t pos) {
  throw Error(ErrorCode::pdf_parse, what + " at offset " + std::to_string(pos));
}

}  // namespace

std::int64_t Object::as_int() const {
  if (is_int()) return std::get<std::int64_t>(v_);
  if (std::holds_alternative<double>(v_)) return static_cast<std::int64_t>(std::get<double>(v_));
  return 0;
}

double Object::as_number() const {
  if (is_int()) return static_cast<double>(std::get<std::int64_t>(v_));
  if (std::holds_alternative<double>(v_)) return std::get<double>(v_);
  return 0.0;
}

const Dict& Object::dict() const {
  if (is_stream()) return stream().dict;
  return *std::get<std::shared_ptr<const Dict>>(v_);
}

const Object& lookup(const Dict& d, std::string_view key) {
  static const Object kNull;
  auto it = d.find(key);
  return it == d.end() ? kNull : it->second;
}

bool is_pdf_whitespace(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\0';
}

bool is_pdf_delimiter(char c) {
  switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
      return true;
    default:
      return false;
  }
}

void Lexer::skip_whitespace() {
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (is_pdf_whitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
    } else {
      break;
    }
  }
}

LexToken Lexer::peek() {
  if (!peeked_) {
    const std::size_t save = pos_;
    peeked_ = next();
    peeked_end_ = pos_;
    pos_ = save;
  }
  return *peeked_;
}

LexToken Lexer::next() {
  if (peeked_) {
    LexToken t = std::move(*peeked_);
    peeked_.reset();
    pos_ = peeked_end_;
    return t;
  }
  skip_whitespace();
  if (pos_ >= data_.size()) return LexToken{};
  const char c = data_[pos_];
  switch (c) {
    case '(':
      ++pos_;
      return read_string();
    case '<':
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
        pos_ += 2;
        return LexToken{TokenKind::dict_begin, "<<"};
      }
      ++pos_;
      return read_hex_string();
    case '>':
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
        pos_ += 2;
        return LexToken{TokenKind::dict_end, ">>"};
      }
      ++pos_;
      return next();  // stray '>'
    case '[':
      ++pos_;
      return LexToken{TokenKind::array_begin, "["};
    case ']':
      ++pos_;
      return LexToken{TokenKind::array_end, "]"};
    case '{':
    case '}':
      ++pos_;
      return LexToken{TokenKind::keyword, std::string(1, c)};
    case '/':
      ++pos_;
      return read_name();
    case ')':
      ++pos_;
      return next();
    default:
      return read_number_or_keyword();
  }
}

LexToken Lexer::read_string() {
  std::string out;
  int nesting = 1;
  while (pos_ < data_.size()) {
    char c = data_[pos_++];
    if (c == '\\') {
      if (pos_ >= data_.size()) break;
      char e = data_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;
        case '\n':
          break;
        default:
          if (e >= '0' && e <= '7') {
            int v = e - '0';
            for (int k = 0; k < 2 && pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '7'; ++k) {
              v = v * 8 + (data_[pos_++] - '0');
            }
            out.push_back(static_cast<char>(v & 0xFF));
          } else {
            out.push_back(e);
          }
      }
    } else if (c == '(') {
      ++nesting;
      out.push_back(c);
    } else if (c == ')') {
      if (--nesting == 0) break;
      out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  return LexToken{TokenKind::string, std::move(out)};
}

LexToken Lexer::read_hex_string() {
  std::string out;
  int hi = -1;
  while (pos_ < data_.size()) {
    const char c = data_[pos_++];
    if (c == '>') break;
    const int v = hex_value(c);
    if (v < 0) continue;
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<char>(hi * 16 + v));
      hi = -1;
    }
  }
  if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
  return LexToken{TokenKind::string, std::move(out)};
}

LexToken Lexer::read_name() {
  std::string out;
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (is_pdf_whitespace(c) || is_pdf_delimiter(c)) break;
    ++pos_;
    if (c == '#' && pos_ + 1 < data_.size()) {
      const int h = hex_value(data_[pos_]);
      const int l = hex_value(data_[pos_ + 1]);
      if (h >= 0 && l >= 0) {
        out.push_back(static_cast<char>(h * 16 + l));
        pos_ += 2;
        continue;
      }
    }
    out.push_back(c);
  }
  return LexToken{TokenKind::name, std::move(out)};
}

LexToken Lexer::read_number_or_keyword() {
  const std::size_t start = pos_;
  while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) && !is_pdf_delimiter(data_[pos_])) ++pos_;
  std::string word(data_.substr(start, pos_ - start));
  if (word.empty()) {
    ++pos_;  // unknown byte; skip it
    return next();
  }
  const char c0 = word[0];
  if (std::isdigit(static_cast<unsigned char>(c0)) || c0 == '-' || c0 == '+' || c0 == '.') {
    bool has_dot = false;
    bool numeric = true;
    for (std::size_t i = 0; i < word.size(); ++i) {
      const char c = word[i];
      if (c == '.') {
        has_dot = true;
      } else if ((c == '-' || c == '+') && i == 0) {
      } else if (!std::isdigit(static_cast<unsigned char>(c))) {
        numeric = false;
      }
    }
    if (numeric) {
      LexToken t;
      t.text = word;
      std::string clean = word;
      // Tolerate doubled signs such as "--5" seen in broken generators.
      while (clean.size() > 1 && (clean[0] == '-' || clean[0] == '+') &&
             (clean[1] == '-' || clean[1] == '+'))
        clean.erase(0, 1);
      if (!has_dot) {
        t.kind = TokenKind::integer;
        const char* b = clean.data() + (clean[0] == '+' ? 1 : 0);
        auto res = std::from_chars(b, clean.data() + clean.size(), t.integer);
        if (res.ec != std::errc()) {
          t.kind = TokenKind::real;
          t.real = std::strtod(clean.c_str(), nullptr);
        }
      } else {
        t.kind = TokenKind::real;
        t.real = std::strtod(clean.c_str(), nullptr);
      }
      return t;
    }
  }
  return LexToken{TokenKind::keyword, std::move(word)};
}

Object Parser::parse_object(bool allow_stream) { return parse_from(lexer_.next(), allow_stream); }

Object Parser::parse_from(LexToken tok, bool allow_stream) {
  if (++depth_ > kMaxDepth) {
    depth_ = 0;
    fail("object nesting too deep", lexer_.position());
  }
  struct DepthGuard {
    int& d;
    ~DepthGuard() { --d; }
  } guard{depth_};

  switch (tok.kind) {
    case TokenKind::end:
      fail("unexpected end of data", lexer_.position());
    case TokenKind::integer: {
      // Look ahead for "gen R".
      const std::size_t save = lexer_.position();
      LexToken t2 = lexer_.next();
      if (t2.kind == TokenKind::integer) {
        LexToken t3 = lexer_.next();
        if (t3.kind == TokenKind::keyword && t3.text == "R") {
          return Object(Ref{static_cast<int>(tok.integer), static_cast<int>(t2.integer)});
        }
      }
      lexer_.seek(save);
      return Object(tok.integer);
    }
    case TokenKind::real:
      return Object(tok.real);
    case TokenKind::name:
      return Object(Name{std::move(tok.text)});
    case TokenKind::string:
      return Object(String{std::move(tok.text)});
    case TokenKind::array_begin: {
      Array arr;
      for (;;) {
        LexToken t = lexer_.next();
        if (t.kind == TokenKind::array_end) break;
        if (t.kind == TokenKind::end) fail("unterminated array", lexer_.position());
        if (t.kind == TokenKind::dict_end) continue;
        arr.push_back(parse_from(std::move(t), false));
      }
      return Object(std::move(arr));
    }
    case TokenKind::dict_begin: {
      Dict dict;
      for (;;) {
        LexToken t = lexer_.next();
        if (t.kind == TokenKind::dict_end) break;
        if (t.kind == TokenKind::end) fail("unterminated dictionary", lexer_.position());
        if (t.kind != TokenKind::name) continue;  // skip junk keys
        LexToken v = lexer_.next();
        if (v.kind == TokenKind::dict_end) {
          dict[t.text] = Object();
          break;
        }
        dict[t.text] = parse_from(std::move(v), false);
      }
      if (allow_stream) {
        LexToken t = lexer_.peek();
        if (t.kind == TokenKind::keyword && t.text == "stream") {
          lexer_.next();
          return read_stream_body(std::move(dict));
        }
      }
      return Object(std::move(dict));
    }
    case TokenKind::keyword:
      if (tok.text == "true") return Object(true);
      if (tok.text == "false") return Object(false);
      if (tok.text == "null") return Object();
      fail("unexpected keyword '" + tok.text + "'", lexer_.position());
    default:
      fail("unexpected token", lexer_.position());
  }
}

Object Parser::read_stream_body(Dict dict) {
  std::string_view data = lexer_.data();
  std::size_t pos = lexer_.position();
  // The keyword is followed by CRLF or LF (some writers emit a lone CR).
  if (pos < data.size() && data[pos] == '\r') ++pos;
  if (pos < data.size() && data[pos] == '\n') ++pos;
  const std::size_t start = pos;

  std::optional<std::int64_t> length;
  const Object& len_obj = lookup(dict, "Length");
  if (len_obj.is_int()) {
    length = len_obj.as_int();
  } else if (len_obj.is_ref() && resolver_) {
    length = resolver_(len_obj);
  }

  std::size_t end = std::string_view::npos;
  if (length && *length >= 0 && start + static_cast<std::size_t>(*length) <= data.size()) {
    std::size_t probe = start + static_cast<std::size_t>(*length);
    std::size_t p = probe;
    while (p < data.size() && is_pdf_whitespace(data[p])) ++p;
    if (data.substr(p, 9) == "endstream") end = probe;
  }
  if (end == std::string_view::npos) {
    const std::size_t found = data.find("endstream", start);
    if (found == std::string_view::npos) fail("unterminated stream", start);
    end = found;
    while (end > start && (data[end - 1] == '\n' || data[end - 1] == '\r')) --end;
  }
  auto sd = std::make_shared<StreamData>();
  sd->dict = std::move(dict);
  sd->raw = std::string(data.substr(start, end - start));
  std::size_t after = data.find("endstream", end);
  lexer_.seek(after == std::string_view::npos ? data.size() : after + 9);
  return Object(std::shared_ptr<const StreamData>(std::move(sd)));
}

Object Parser::parse_indirect(int* num, int* gen) {
  LexToken n = lexer_.next();
  LexToken g = lexer_.next();
  LexToken kw = lexer_.next();
  if (n.kind != TokenKind::integer || g.kind != TokenKind::integer || kw.kind != TokenKind::keyword ||
      kw.text != "obj") {
    fail("expected indirect object header", lexer_.position());
  }
  if (num) *num = static_cast<int>(n.integer);
  if (gen) *gen = static_cast<int>(g.integer);
  LexToken first = lexer_.next();
  if (first.kind == TokenKind::keyword && first.text == "endobj") return Object();
  Object obj = parse_from(std::move(first), true);
  return obj;
}

}  // namespace paperjson::pdf
