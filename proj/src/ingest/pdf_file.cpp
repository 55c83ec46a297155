#include "ingest/pdf_file.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cstring>

#include "core/error.hpp"
#include "ingest/pdf_lexer.hpp"

namespace paperjson::pdf {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::pdf_parse, what); }

std::string inflate_with(std::string_view in, int window_bits, bool* ok) {
  z_stream zs{};
  *ok = false;
  if (inflateInit2(&zs, window_bits) != Z_OK) return {};
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  std::string out;
  char buf[16384];
  int ret = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    ret = inflate(&zs, Z_NO_FLUSH);
    out.append(buf, sizeof buf - zs.avail_out);
    if (ret == Z_STREAM_END) break;
    if (ret != Z_OK) break;
  } while (zs.avail_in > 0 || zs.avail_out == 0);
  inflateEnd(&zs);
  // Truncated streams still yield whatever decoded cleanly.
  *ok = ret == Z_STREAM_END || ret == Z_OK || ret == Z_BUF_ERROR || !out.empty();
  return out;
}

int int_param(const Dict& d, std::string_view key, int fallback) {
  const Object& o = lookup(d, key);
  return o.is_number() ? static_cast<int>(o.as_int()) : fallback;
}

}  // namespace

std::string flate_decode(std::string_view in) {
  bool ok = false;
  std::string out = inflate_with(in, 15, &ok);
  if (ok) return out;
  out = inflate_with(in, -15, &ok);  // raw deflate without zlib header
  if (ok) return out;
  fail("corrupt FlateDecode stream");
}

std::string ascii_hex_decode(std::string_view in) {
  std::string out;
  int hi = -1;
  for (char c : in) {
    if (c == '>') break;
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    if (v < 0) continue;
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<char>(hi * 16 + v));
      hi = -1;
    }
  }
  if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
  return out;
}

std::string ascii85_decode(std::string_view in) {
  std::string out;
  if (in.substr(0, 2) == "<~") in.remove_prefix(2);
  std::uint32_t tuple = 0;
  int count = 0;
  for (char c : in) {
    if (c == '~') break;
    if (is_pdf_whitespace(c)) continue;
    if (c == 'z' && count == 0) {
      out.append(4, '\0');
      continue;
    }
    if (c < '!' || c > 'u') fail("invalid ASCII85 character");
    tuple = tuple * 85 + static_cast<std::uint32_t>(c - '!');
    if (++count == 5) {
      for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<char>((tuple >> s) & 0xFF));
      tuple = 0;
      count = 0;
    }
  }
  if (count > 1) {
    for (int k = count; k < 5; ++k) tuple = tuple * 85 + 84;
    for (int k = 0; k < count - 1; ++k) out.push_back(static_cast<char>((tuple >> (24 - 8 * k)) & 0xFF));
  }
  return out;
}

std::string lzw_decode(std::string_view in, int early_change) {
  std::vector<std::string> table;
  auto reset = [&] {
    table.clear();
    for (int i = 0; i < 256; ++i) table.emplace_back(1, static_cast<char>(i));
    table.emplace_back();  // 256 clear
    table.emplace_back();  // 257 eod
  };
  reset();
  std::string out;
  int code_len = 9;
  std::uint32_t buffer = 0;
  int bits = 0;
  std::size_t pos = 0;
  std::string prev;
  bool have_prev = false;
  for (;;) {
    while (bits < code_len && pos < in.size()) {
      buffer = (buffer << 8) | static_cast<unsigned char>(in[pos++]);
      bits += 8;
    }
    if (bits < code_len) break;
    const int code = static_cast<int>((buffer >> (bits - code_len)) & ((1u << code_len) - 1));
    bits -= code_len;
    if (code == 256) {
      reset();
      code_len = 9;
      have_prev = false;
      continue;
    }
    if (code == 257) break;
    std::string entry;
    if (code < static_cast<int>(table.size())) {
      entry = table[code];
      if (have_prev) table.push_back(prev + entry[0]);
    } else if (have_prev) {
      entry = prev + prev[0];
      table.push_back(entry);
    } else {
      fail("corrupt LZW stream");
    }
    out += entry;
    prev = entry;
    have_prev = true;
    const int next = static_cast<int>(table.size()) + early_change;
    if (next >= 4096) code_len = 12;
    else if (next >= 2048) code_len = 12;
    else if (next >= 1024) code_len = 11;
    else if (next >= 512) code_len = 10;
  }
  return out;
}

std::string run_length_decode(std::string_view in) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    const int len = static_cast<unsigned char>(in[i++]);
    if (len == 128) break;
    if (len < 128) {
      const std::size_t n = std::min<std::size_t>(len + 1, in.size() - i);
      out.append(in.substr(i, n));
      i += n;
    } else if (i < in.size()) {
      out.append(static_cast<std::size_t>(257 - len), in[i++]);
    }
  }
  return out;
}

std::string apply_predictor(std::string data, const Dict& parms) {
  const int predictor = int_param(parms, "Predictor", 1);
  if (predictor < 2) return data;
  const int colors = std::max(1, int_param(parms, "Colors", 1));
  const int bpc = std::max(1, int_param(parms, "BitsPerComponent", 8));
  const int columns = std::max(1, int_param(parms, "Columns", 1));
  const std::size_t bpp = std::max(1, (colors * bpc + 7) / 8);
  const std::size_t row_len = (static_cast<std::size_t>(colors) * bpc * columns + 7) / 8;

  if (predictor == 2) {
    if (bpc != 8) return data;
    for (std::size_t row = 0; row + row_len <= data.size(); row += row_len) {
      for (std::size_t i = bpp; i < row_len; ++i) {
        data[row + i] = static_cast<char>(static_cast<unsigned char>(data[row + i]) +
                                          static_cast<unsigned char>(data[row + i - bpp]));
      }
    }
    return data;
  }

  std::string out;
  std::vector<unsigned char> prior(row_len, 0);
  std::vector<unsigned char> cur(row_len, 0);
  std::size_t pos = 0;
  while (pos < data.size()) {
    const int filter = static_cast<unsigned char>(data[pos++]);
    const std::size_t n = std::min(row_len, data.size() - pos);
    std::fill(cur.begin(), cur.end(), 0);
    for (std::size_t i = 0; i < n; ++i) cur[i] = static_cast<unsigned char>(data[pos + i]);
    pos += n;
    for (std::size_t i = 0; i < row_len; ++i) {
      const int left = i >= bpp ? cur[i - bpp] : 0;
      const int up = prior[i];
      const int up_left = i >= bpp ? prior[i - bpp] : 0;
      int v = cur[i];
      switch (filter) {
        case 1: v += left; break;
        case 2: v += up; break;
        case 3: v += (left + up) / 2; break;
        case 4: {
          const int p = left + up - up_left;
          const int pa = std::abs(p - left);
          const int pb = std::abs(p - up);
          const int pc = std::abs(p - up_left);
          v += (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : up_left);
          break;
        }
        default: break;
      }
      cur[i] = static_cast<unsigned char>(v & 0xFF);
    }
    out.append(reinterpret_cast<const char*>(cur.data()), n);
    prior = cur;
  }
  return out;
}

std::string decode_stream(const StreamData& stream, const File* resolver) {
  auto res = [&](const Object& o) { return resolver ? resolver->resolve(o) : o; };
  const Object filter = res(lookup(stream.dict, "Filter"));
  const Object parms = res(lookup(stream.dict, "DecodeParms"));
  std::vector<std::string> filters;
  std::vector<Object> parm_list;
  if (filter.is_name()) {
    filters.push_back(filter.name());
    parm_list.push_back(parms);
  } else if (filter.is_array()) {
    for (std::size_t i = 0; i < filter.array().size(); ++i) {
      const Object f = res(filter.array()[i]);
      if (f.is_name()) filters.push_back(f.name());
      parm_list.push_back(parms.is_array() && i < parms.array().size() ? res(parms.array()[i]) : Object());
    }
  }
  std::string data = stream.raw;
  for (std::size_t i = 0; i < filters.size(); ++i) {
    const std::string& f = filters[i];
    const Object& p = parm_list[i];
    if (f == "FlateDecode" || f == "Fl") {
      data = flate_decode(data);
      if (p.is_dict()) data = apply_predictor(std::move(data), p.dict());
    } else if (f == "LZWDecode" || f == "LZW") {
      const int early = p.is_dict() ? int_param(p.dict(), "EarlyChange", 1) : 1;
      data = lzw_decode(data, early);
      if (p.is_dict()) data = apply_predictor(std::move(data), p.dict());
    } else if (f == "ASCIIHexDecode" || f == "AHx") {
      data = ascii_hex_decode(data);
    } else if (f == "ASCII85Decode" || f == "A85") {
      data = ascii85_decode(data);
    } else if (f == "RunLengthDecode" || f == "RL") {
      data = run_length_decode(data);
    } else {
      break;  // image codec or unsupported; leave encoded
    }
  }
  return data;
}

File::File(std::string bytes) : data_(std::move(bytes)) {
  if (data_.size() < 8 || data_.find("%PDF-") == std::string::npos ||
      data_.find("%PDF-") > 1024) {
    fail("missing %PDF header");
  }
  load_xref();
  if (!lookup(trailer_, "Encrypt").is_null()) {
    throw Error(ErrorCode::pdf_encrypted, "encrypted PDFs are not supported");
  }
  const Object root = resolve(lookup(trailer_, "Root"));
  if (!root.is_dict()) fail("document catalog not found");
}

void File::load_xref() {
  const std::size_t sx = data_.rfind("startxref");
  bool ok = false;
  if (sx != std::string::npos) {
    Lexer lx(data_, sx + 9);
    LexToken t = lx.next();
    if (t.kind == TokenKind::integer && t.integer >= 0 &&
        static_cast<std::size_t>(t.integer) < data_.size()) {
      try {
        ok = read_xref_chain(static_cast<std::size_t>(t.integer));
      } catch (const Error&) {
        ok = false;
      }
    }
  }
  if (ok) {
    // Spot-check that the table points at real objects; stale offsets are
    // common in hand-edited files.
    int checked = 0;
    for (const auto& [num, e] : xref_) {
      if (e.type != XrefEntry::Type::offset) continue;
      Lexer lx(data_, e.offset);
      LexToken n = lx.next();
      if (n.kind != TokenKind::integer || n.integer != num) {
        ok = false;
        break;
      }
      if (++checked >= 16) break;
    }
  }
  if (!ok || lookup(trailer_, "Root").is_null()) {
    xref_.clear();
    trailer_.clear();
    rebuild_xref();
  }
}

bool File::read_xref_chain(std::size_t offset) {
  std::set<std::size_t> seen;
  std::optional<std::size_t> next = offset;
  bool any = false;
  while (next && !seen.count(*next)) {
    const std::size_t at = *next;
    seen.insert(at);
    next.reset();
    Lexer lx(data_, at);
    LexToken t = lx.peek();
    if (t.kind == TokenKind::keyword && t.text == "xref") {
      if (!read_xref_table(at, seen)) return false;
    } else if (t.kind == TokenKind::integer) {
      if (!read_xref_stream(at, seen)) return false;
    } else {
      return false;
    }
    any = true;
    const Object& prev = lookup(trailer_, "__prev");
    if (prev.is_int() && prev.as_int() >= 0) next = static_cast<std::size_t>(prev.as_int());
    trailer_.erase("__prev");
  }
  return any;
}

bool File::read_xref_table(std::size_t offset, std::set<std::size_t>& seen) {
  Lexer lx(data_, offset);
  lx.next();  // "xref"
  for (;;) {
    LexToken a = lx.peek();
    if (a.kind == TokenKind::keyword && a.text == "trailer") {
      lx.next();
      break;
    }
    if (a.kind != TokenKind::integer) return false;
    lx.next();
    LexToken b = lx.next();
    if (b.kind != TokenKind::integer) return false;
    const std::int64_t first = a.integer;
    for (std::int64_t i = 0; i < b.integer; ++i) {
      LexToken off = lx.next();
      LexToken gen = lx.next();
      LexToken kind = lx.next();
      if (off.kind != TokenKind::integer || gen.kind != TokenKind::integer ||
          kind.kind != TokenKind::keyword)
        return false;
      const int num = static_cast<int>(first + i);
      if (xref_.count(num)) continue;  // newer section wins
      XrefEntry e;
      if (kind.text == "n" && off.integer > 0) {
        e.type = XrefEntry::Type::offset;
        e.offset = static_cast<std::size_t>(off.integer);
      }
      xref_[num] = e;
    }
  }
  Parser parser(lx);
  Object tr = parser.parse_object();
  if (!tr.is_dict()) return false;
  for (const auto& [k, v] : tr.dict()) {
    if (k == "Prev" || k == "XRefStm") continue;
    if (!trailer_.count(k)) trailer_[k] = v;
  }
  // Hybrid files: the xref stream supplements the classic table.
  const Object& xs = lookup(tr.dict(), "XRefStm");
  if (xs.is_int() && xs.as_int() > 0 && !seen.count(static_cast<std::size_t>(xs.as_int()))) {
    seen.insert(static_cast<std::size_t>(xs.as_int()));
    read_xref_stream(static_cast<std::size_t>(xs.as_int()), seen);
    trailer_.erase("__prev");
  }
  const Object& prev = lookup(tr.dict(), "Prev");
  if (prev.is_int()) trailer_["__prev"] = prev;
  return true;
}

bool File::read_xref_stream(std::size_t offset, std::set<std::size_t>&) {
  Lexer lx(data_, offset);
  Parser parser(lx, [this](const Object& o) -> std::optional<std::int64_t> {
    Object r = resolve(o);
    if (r.is_int()) return r.as_int();
    return std::nullopt;
  });
  Object obj = parser.parse_indirect();
  if (!obj.is_stream()) return false;
  const Dict& d = obj.dict();
  const std::string body = decode_stream(obj.stream());
  const Object& w = lookup(d, "W");
  if (!w.is_array() || w.array().size() < 3) return false;
  int widths[3];
  for (int i = 0; i < 3; ++i) widths[i] = static_cast<int>(w.array()[i].as_int());
  const int row = widths[0] + widths[1] + widths[2];
  if (row <= 0) return false;
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  const Object& index = lookup(d, "Index");
  if (index.is_array()) {
    for (std::size_t i = 0; i + 1 < index.array().size(); i += 2) {
      ranges.emplace_back(index.array()[i].as_int(), index.array()[i + 1].as_int());
    }
  } else {
    ranges.emplace_back(0, lookup(d, "Size").as_int());
  }
  auto field = [&](std::size_t pos, int width, std::uint64_t fallback) -> std::uint64_t {
    if (width == 0) return fallback;
    std::uint64_t v = 0;
    for (int k = 0; k < width; ++k) v = (v << 8) | static_cast<unsigned char>(body[pos + k]);
    return v;
  };
  std::size_t pos = 0;
  for (const auto& [first, count] : ranges) {
    for (std::int64_t i = 0; i < count; ++i) {
      if (pos + static_cast<std::size_t>(row) > body.size()) break;
      const std::uint64_t type = field(pos, widths[0], 1);
      const std::uint64_t f2 = field(pos + widths[0], widths[1], 0);
      const std::uint64_t f3 = field(pos + widths[0] + widths[1], widths[2], 0);
      pos += static_cast<std::size_t>(row);
      const int num = static_cast<int>(first + i);
      if (xref_.count(num)) continue;
      XrefEntry e;
      if (type == 1) {
        e.type = XrefEntry::Type::offset;
        e.offset = static_cast<std::size_t>(f2);
      } else if (type == 2) {
        e.type = XrefEntry::Type::compressed;
        e.offset = static_cast<std::size_t>(f2);
        e.index = static_cast<int>(f3);
      }
      xref_[num] = e;
    }
  }
  for (const auto& [k, v] : d) {
    if (k == "Prev" || k == "Length" || k == "Filter" || k == "DecodeParms" || k == "W" ||
        k == "Index" || k == "Type")
      continue;
    if (!trailer_.count(k)) trailer_[k] = v;
  }
  const Object& prev = lookup(d, "Prev");
  if (prev.is_int()) trailer_["__prev"] = prev;
  return true;
}

void File::rebuild_xref() {
  rebuilt_ = true;
  std::size_t pos = 0;
  while ((pos = data_.find("obj", pos)) != std::string::npos) {
    const std::size_t kw = pos;
    pos += 3;
    if (kw > 0 && !is_pdf_whitespace(data_[kw - 1])) continue;
    if (pos < data_.size() && !is_pdf_whitespace(data_[pos]) && !is_pdf_delimiter(data_[pos])) continue;
    // Walk back over "<num> <gen> ".
    std::size_t p = kw;
    auto skip_ws_back = [&] {
      while (p > 0 && is_pdf_whitespace(data_[p - 1])) --p;
    };
    auto digits_back = [&]() -> std::optional<std::size_t> {
      const std::size_t end = p;
      while (p > 0 && std::isdigit(static_cast<unsigned char>(data_[p - 1]))) --p;
      if (p == end) return std::nullopt;
      return std::stoul(data_.substr(p, end - p));
    };
    skip_ws_back();
    auto gen = digits_back();
    if (!gen) continue;
    skip_ws_back();
    auto num = digits_back();
    if (!num || *num > 10000000) continue;
    XrefEntry e;
    e.type = XrefEntry::Type::offset;
    e.offset = p;
    xref_[static_cast<int>(*num)] = e;  // later definitions win
  }
  // Objects packed in object streams.
  std::vector<std::pair<int, XrefEntry>> direct(xref_.begin(), xref_.end());
  for (const auto& [num, e] : direct) {
    Object o;
    try {
      o = get(num);
    } catch (const Error&) {
      continue;
    }
    if (!o.is_stream() || !lookup(o.dict(), "Type").is_name("ObjStm")) continue;
    std::string body;
    try {
      body = decode_stream(o.stream(), this);
    } catch (const Error&) {
      continue;
    }
    const std::int64_t n = lookup(o.dict(), "N").as_int();
    Lexer lx(body);
    for (std::int64_t i = 0; i < n; ++i) {
      LexToken a = lx.next();
      LexToken b = lx.next();
      if (a.kind != TokenKind::integer || b.kind != TokenKind::integer) break;
      const int inner = static_cast<int>(a.integer);
      if (xref_.count(inner)) continue;
      XrefEntry c;
      c.type = XrefEntry::Type::compressed;
      c.offset = static_cast<std::size_t>(num);
      c.index = static_cast<int>(i);
      xref_[inner] = c;
    }
  }
  // Trailer: last classic trailer, else an xref stream dict, else the catalog.
  std::size_t tp = data_.rfind("trailer");
  while (tp != std::string::npos) {
    try {
      Lexer lx(data_, tp + 7);
      Parser parser(lx);
      Object tr = parser.parse_object();
      if (tr.is_dict() && !lookup(tr.dict(), "Root").is_null()) {
        trailer_ = tr.dict();
        break;
      }
    } catch (const Error&) {
    }
    if (tp == 0) break;
    tp = data_.rfind("trailer", tp - 1);
  }
  if (lookup(trailer_, "Root").is_null()) {
    for (const auto& [num, e] : xref_) {
      Object o;
      try {
        o = get(num);
      } catch (const Error&) {
        continue;
      }
      if (!(o.is_dict() || o.is_stream())) continue;
      const Dict& d = o.dict();
      if (lookup(d, "Type").is_name("XRef") && !lookup(d, "Root").is_null()) {
        for (const auto& [k, v] : d) trailer_[k] = v;
        break;
      }
      if (lookup(d, "Type").is_name("Catalog")) {
        trailer_["Root"] = Object(Ref{num, 0});
      }
    }
  }
  trailer_.erase("Prev");
  cache_.clear();
}

Object File::get(int num) const {
  auto it = cache_.find(num);
  if (it != cache_.end()) return it->second;
  if (resolving_.count(num)) return Object();  // reference cycle
  resolving_.insert(num);
  Object obj;
  try {
    obj = load_object(num);
  } catch (...) {
    resolving_.erase(num);
    throw;
  }
  resolving_.erase(num);
  cache_[num] = obj;
  return obj;
}

Object File::load_object(int num) const {
  auto it = xref_.find(num);
  if (it == xref_.end()) return Object();
  const XrefEntry& e = it->second;
  if (e.type == XrefEntry::Type::free) return Object();
  if (e.type == XrefEntry::Type::compressed) {
    return load_from_object_stream(static_cast<int>(e.offset), e.index, num);
  }
  if (e.offset >= data_.size()) fail("object offset out of range");
  Lexer lx(data_, e.offset);
  Parser parser(lx, [this](const Object& o) -> std::optional<std::int64_t> {
    Object r = resolve(o);
    if (r.is_int()) return r.as_int();
    return std::nullopt;
  });
  return parser.parse_indirect();
}

Object File::load_from_object_stream(int stream_num, int index, int num) const {
  Object st = get(stream_num);
  if (!st.is_stream()) fail("object stream " + std::to_string(stream_num) + " missing");
  const std::string body = decode_stream(st.stream(), this);
  const std::int64_t n = lookup(st.dict(), "N").as_int();
  const std::int64_t first = lookup(st.dict(), "First").as_int();
  Lexer lx(body);
  std::int64_t offset = -1;
  for (std::int64_t i = 0; i < n; ++i) {
    LexToken a = lx.next();
    LexToken b = lx.next();
    if (a.kind != TokenKind::integer || b.kind != TokenKind::integer) break;
    if (a.integer == num && (i == index || offset < 0)) offset = b.integer;
    if (i == index && a.integer == num) break;
  }
  if (offset < 0 || first + offset > static_cast<std::int64_t>(body.size())) {
    fail("object " + std::to_string(num) + " not found in object stream");
  }
  Lexer olx(body, static_cast<std::size_t>(first + offset));
  Parser parser(olx);
  return parser.parse_object();
}

Object File::resolve(const Object& obj) const {
  Object cur = obj;
  for (int hops = 0; cur.is_ref() && hops < 32; ++hops) cur = get(cur.ref().num);
  return cur.is_ref() ? Object() : cur;
}

std::vector<PageEntry> File::pages() const {
  std::vector<PageEntry> out;
  const Object root = resolve(lookup(trailer_, "Root"));
  if (!root.is_dict()) return out;
  std::set<int> visited;
  const char* inherited[] = {"Resources", "MediaBox", "CropBox", "Rotate"};

  struct Frame {
    Object node;
    Dict inherit;
  };
  std::vector<Frame> stack;
  const Object& pages_ref = lookup(root.dict(), "Pages");
  if (pages_ref.is_ref()) visited.insert(pages_ref.ref().num);
  stack.push_back(Frame{resolve(pages_ref), Dict{}});
  // Depth-first, preserving kid order.
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (!f.node.is_dict()) continue;
    const Dict& d = f.node.dict();
    Dict inherit = f.inherit;
    for (const char* key : inherited) {
      const Object& v = lookup(d, key);
      if (!v.is_null()) inherit[key] = v;
    }
    const Object& kids = lookup(d, "Kids");
    const bool is_page = lookup(d, "Type").is_name("Page") || (kids.is_null() && !lookup(d, "Contents").is_null());
    if (is_page || !kids.is_array()) {
      if (!is_page) continue;
      PageEntry pe;
      pe.dict = d;
      for (const auto& [k, v] : inherit) pe.dict[k] = v;
      Object box = resolve(lookup(pe.dict, "CropBox"));
      if (!box.is_array() || box.array().size() < 4) box = resolve(lookup(pe.dict, "MediaBox"));
      if (box.is_array() && box.array().size() >= 4) {
        double b[4];
        for (int i = 0; i < 4; ++i) b[i] = resolve(box.array()[i]).as_number();
        pe.box[0] = std::min(b[0], b[2]);
        pe.box[1] = std::min(b[1], b[3]);
        pe.box[2] = std::max(b[0], b[2]);
        pe.box[3] = std::max(b[1], b[3]);
      }
      pe.rotate = static_cast<int>(resolve(lookup(pe.dict, "Rotate")).as_int());
      out.push_back(std::move(pe));
      continue;
    }
    const Array& arr = kids.array();
    for (auto it = arr.rbegin(); it != arr.rend(); ++it) {
      if (it->is_ref()) {
        if (visited.count(it->ref().num)) continue;
        visited.insert(it->ref().num);
      }
      stack.push_back(Frame{resolve(*it), inherit});
    }
  }
  return out;
}

std::string File::page_content(const PageEntry& page) const {
  const Object contents = resolve(lookup(page.dict, "Contents"));
  std::string out;
  auto append = [&](const Object& o) {
    const Object s = resolve(o);
    if (!s.is_stream()) return;
    out += decode_stream(s.stream(), this);
    out.push_back('\n');
  };
  if (contents.is_array()) {
    for (const auto& c : contents.array()) append(c);
  } else {
    append(contents);
  }
  return out;
}

}  // namespace paperjson::pdf
