#include "ingest/pdf_fonts.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "ingest/pdf_file.hpp"
#include "ingest/pdf_lexer.hpp"

namespace paperjson::pdf {

namespace {

// Helvetica advance widths for codes 32..126, in 1/1000 em.
constexpr int kHelveticaWidths[95] = {
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278, 278,  // 32-47
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278, 584, 584, 584, 556,  // 48-63
    1015, 667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, 722, 778,  // 64-79
    667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, 278, 278, 278, 469, 556,   // 80-95
    333, 556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, 556, 556,   // 96-111
    556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584,        // 112-126
};

constexpr char32_t kWinAnsiHigh[32] = {
    0x20AC, 0xFFFD, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0xFFFD, 0x017D, 0xFFFD,
    0xFFFD, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0xFFFD, 0x017E, 0x0178,
};

constexpr char32_t kMacRomanHigh[96] = {
    0xC4, 0xC5, 0xC7, 0xC9, 0xD1, 0xD6, 0xDC, 0xE1, 0xE0, 0xE2, 0xE4, 0xE3, 0xE5, 0xE7, 0xE9, 0xE8,
    0xEA, 0xEB, 0xED, 0xEC, 0xEE, 0xEF, 0xF1, 0xF3, 0xF2, 0xF4, 0xF6, 0xF5, 0xFA, 0xF9, 0xFB, 0xFC,
    0x2020, 0xB0, 0xA2, 0xA3, 0xA7, 0x2022, 0xB6, 0xDF, 0xAE, 0xA9, 0x2122, 0xB4, 0xA8, 0x2260, 0xC6, 0xD8,
    0x221E, 0xB1, 0x2264, 0x2265, 0xA5, 0xB5, 0x2202, 0x2211, 0x220F, 0x3C0, 0x222B, 0xAA, 0xBA, 0x3A9, 0xE6, 0xF8,
    0xBF, 0xA1, 0xAC, 0x221A, 0x192, 0x2248, 0x2206, 0xAB, 0xBB, 0x2026, 0xA0, 0xC0, 0xC3, 0xD5, 0x152, 0x153,
    0x2013, 0x2014, 0x201C, 0x201D, 0x2018, 0x2019, 0xF7, 0x25CA, 0xFF, 0x178, 0x2044, 0x20AC, 0x2039, 0x203A, 0xFB01, 0xFB02,
};

struct StdHigh {
  unsigned char code;
  char32_t cp;
};

constexpr StdHigh kStandardHigh[] = {
    {0xA1, 0xA1}, {0xA2, 0xA2}, {0xA3, 0xA3}, {0xA4, 0x2044}, {0xA5, 0xA5}, {0xA6, 0x192},
    {0xA7, 0xA7}, {0xA8, 0xA4}, {0xA9, 0x27}, {0xAA, 0x201C}, {0xAB, 0xAB}, {0xAC, 0x2039},
    {0xAD, 0x203A}, {0xAE, 0xFB01}, {0xAF, 0xFB02}, {0xB1, 0x2013}, {0xB2, 0x2020}, {0xB3, 0x2021},
    {0xB4, 0xB7}, {0xB6, 0xB6}, {0xB7, 0x2022}, {0xB8, 0x201A}, {0xB9, 0x201E}, {0xBA, 0x201D},
    {0xBB, 0xBB}, {0xBC, 0x2026}, {0xBD, 0x2030}, {0xBF, 0xBF}, {0xC1, 0x60}, {0xC2, 0xB4},
    {0xC3, 0x2C6}, {0xC4, 0x2DC}, {0xC5, 0xAF}, {0xC6, 0x2D8}, {0xC7, 0x2D9}, {0xC8, 0xA8},
    {0xCA, 0x2DA}, {0xCB, 0xB8}, {0xCD, 0x2DD}, {0xCE, 0x2DB}, {0xCF, 0x2C7}, {0xD0, 0x2014},
    {0xE1, 0xC6}, {0xE3, 0xAA}, {0xE8, 0x141}, {0xE9, 0xD8}, {0xEA, 0x152}, {0xEB, 0xBA},
    {0xF1, 0xE6}, {0xF5, 0x131}, {0xF8, 0x142}, {0xF9, 0xF8}, {0xFA, 0x153}, {0xFB, 0xDF},
};

// Built-in encoding of the Symbol font: Latin letters stand for Greek.
constexpr char32_t kSymbolLower[26] = {
    0x3B1, 0x3B2, 0x3C7, 0x3B4, 0x3B5, 0x3C6, 0x3B3, 0x3B7, 0x3B9, 0x3D5, 0x3BA, 0x3BB, 0x3BC,
    0x3BD, 0x3BF, 0x3C0, 0x3B8, 0x3C1, 0x3C3, 0x3C4, 0x3C5, 0x3D6, 0x3C9, 0x3BE, 0x3C8, 0x3B6,
};
constexpr char32_t kSymbolUpper[26] = {
    0x391, 0x392, 0x3A7, 0x394, 0x395, 0x3A6, 0x393, 0x397, 0x399, 0x3D1, 0x39A, 0x39B, 0x39C,
    0x39D, 0x39F, 0x3A0, 0x398, 0x3A1, 0x3A3, 0x3A4, 0x3A5, 0x3C2, 0x3A9, 0x39E, 0x3A8, 0x396,
};

enum class BaseEncoding { standard, win_ansi, mac_roman, symbol };

std::array<char32_t, 256> make_encoding(BaseEncoding base) {
  std::array<char32_t, 256> enc{};
  for (int c = 0; c < 256; ++c) enc[c] = c < 0x20 ? static_cast<char32_t>(c) : 0;
  for (int c = 0x20; c < 0x7F; ++c) enc[c] = static_cast<char32_t>(c);
  switch (base) {
    case BaseEncoding::win_ansi:
      for (int c = 0; c < 32; ++c) enc[0x80 + c] = kWinAnsiHigh[c];
      for (int c = 0xA0; c < 0x100; ++c) enc[c] = static_cast<char32_t>(c);
      enc[0xAD] = U'-';
      break;
    case BaseEncoding::mac_roman:
      for (int c = 0; c < 96; ++c) enc[0x80 + c] = kMacRomanHigh[c];
      break;
    case BaseEncoding::standard:
      enc[0x27] = 0x2019;
      enc[0x60] = 0x2018;
      for (const auto& h : kStandardHigh) enc[h.code] = h.cp;
      break;
    case BaseEncoding::symbol:
      for (int i = 0; i < 26; ++i) {
        enc['a' + i] = kSymbolLower[i];
        enc['A' + i] = kSymbolUpper[i];
      }
      enc[0x2D] = 0x2212;
      enc[0x22] = 0x2200;
      enc[0x24] = 0x2203;
      enc[0xA3] = 0x2264;
      enc[0xA5] = 0x221E;
      enc[0xAC] = 0x2190;
      enc[0xAE] = 0x2192;
      enc[0xB1] = 0xB1;
      enc[0xB3] = 0x2265;
      enc[0xB4] = 0xD7;
      enc[0xB6] = 0x2202;
      enc[0xB8] = 0xF7;
      enc[0xB9] = 0x2260;
      enc[0xBB] = 0x2248;
      enc[0xCE] = 0x2208;
      enc[0xD1] = 0x2207;
      enc[0xD6] = 0x221A;
      enc[0xE5] = 0x2211;
      enc[0xF2] = 0x222B;
      break;
  }
  return enc;
}

const std::unordered_map<std::string_view, char32_t>& glyph_table() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"space", 0x20}, {"exclam", 0x21}, {"quotedbl", 0x22}, {"numbersign", 0x23},
      {"dollar", 0x24}, {"percent", 0x25}, {"ampersand", 0x26}, {"quotesingle", 0x27},
      {"quoteright", 0x2019}, {"parenleft", 0x28}, {"parenright", 0x29}, {"asterisk", 0x2A},
      {"plus", 0x2B}, {"comma", 0x2C}, {"hyphen", 0x2D}, {"period", 0x2E}, {"slash", 0x2F},
      {"zero", 0x30}, {"one", 0x31}, {"two", 0x32}, {"three", 0x33}, {"four", 0x34},
      {"five", 0x35}, {"six", 0x36}, {"seven", 0x37}, {"eight", 0x38}, {"nine", 0x39},
      {"colon", 0x3A}, {"semicolon", 0x3B}, {"less", 0x3C}, {"equal", 0x3D}, {"greater", 0x3E},
      {"question", 0x3F}, {"at", 0x40}, {"bracketleft", 0x5B}, {"backslash", 0x5C},
      {"bracketright", 0x5D}, {"asciicircum", 0x5E}, {"underscore", 0x5F}, {"grave", 0x60},
      {"quoteleft", 0x2018}, {"braceleft", 0x7B}, {"bar", 0x7C}, {"braceright", 0x7D},
      {"asciitilde", 0x7E}, {"ff", 0xFB00}, {"fi", 0xFB01}, {"fl", 0xFB02}, {"ffi", 0xFB03},
      {"ffl", 0xFB04}, {"quotedblleft", 0x201C}, {"quotedblright", 0x201D},
      {"quotesinglbase", 0x201A}, {"quotedblbase", 0x201E}, {"endash", 0x2013},
      {"emdash", 0x2014}, {"minus", 0x2212}, {"bullet", 0x2022}, {"dagger", 0x2020},
      {"daggerdbl", 0x2021}, {"section", 0xA7}, {"paragraph", 0xB6}, {"ellipsis", 0x2026},
      {"periodcentered", 0xB7}, {"degree", 0xB0}, {"copyright", 0xA9}, {"registered", 0xAE},
      {"trademark", 0x2122}, {"multiply", 0xD7}, {"divide", 0xF7}, {"plusminus", 0xB1},
      {"lessequal", 0x2264}, {"greaterequal", 0x2265}, {"notequal", 0x2260},
      {"approxequal", 0x2248}, {"infinity", 0x221E}, {"summation", 0x2211},
      {"integral", 0x222B}, {"product", 0x220F}, {"radical", 0x221A}, {"partialdiff", 0x2202},
      {"nabla", 0x2207}, {"gradient", 0x2207}, {"element", 0x2208}, {"arrowright", 0x2192},
      {"arrowleft", 0x2190}, {"universal", 0x2200}, {"existential", 0x2203},
      {"alpha", 0x3B1}, {"beta", 0x3B2}, {"gamma", 0x3B3}, {"delta", 0x3B4},
      {"epsilon", 0x3B5}, {"zeta", 0x3B6}, {"eta", 0x3B7}, {"theta", 0x3B8}, {"iota", 0x3B9},
      {"kappa", 0x3BA}, {"lambda", 0x3BB}, {"mu", 0x3BC}, {"nu", 0x3BD}, {"xi", 0x3BE},
      {"omicron", 0x3BF}, {"pi", 0x3C0}, {"rho", 0x3C1}, {"sigma", 0x3C3}, {"sigma1", 0x3C2},
      {"tau", 0x3C4}, {"upsilon", 0x3C5}, {"phi", 0x3C6}, {"chi", 0x3C7}, {"psi", 0x3C8},
      {"omega", 0x3C9}, {"Alpha", 0x391}, {"Beta", 0x392}, {"Gamma", 0x393}, {"Delta", 0x394},
      {"Epsilon", 0x395}, {"Zeta", 0x396}, {"Eta", 0x397}, {"Theta", 0x398}, {"Iota", 0x399},
      {"Kappa", 0x39A}, {"Lambda", 0x39B}, {"Mu", 0x39C}, {"Nu", 0x39D}, {"Xi", 0x39E},
      {"Omicron", 0x39F}, {"Pi", 0x3A0}, {"Rho", 0x3A1}, {"Sigma", 0x3A3}, {"Tau", 0x3A4},
      {"Upsilon", 0x3A5}, {"Phi", 0x3A6}, {"Chi", 0x3A7}, {"Psi", 0x3A8}, {"Omega", 0x3A9},
      {"agrave", 0xE0}, {"aacute", 0xE1}, {"acircumflex", 0xE2}, {"atilde", 0xE3},
      {"adieresis", 0xE4}, {"aring", 0xE5}, {"ae", 0xE6}, {"ccedilla", 0xE7}, {"egrave", 0xE8},
      {"eacute", 0xE9}, {"ecircumflex", 0xEA}, {"edieresis", 0xEB}, {"igrave", 0xEC},
      {"iacute", 0xED}, {"icircumflex", 0xEE}, {"idieresis", 0xEF}, {"ntilde", 0xF1},
      {"ograve", 0xF2}, {"oacute", 0xF3}, {"ocircumflex", 0xF4}, {"otilde", 0xF5},
      {"odieresis", 0xF6}, {"oslash", 0xF8}, {"ugrave", 0xF9}, {"uacute", 0xFA},
      {"ucircumflex", 0xFB}, {"udieresis", 0xFC}, {"germandbls", 0xDF}, {"oe", 0x153},
      {"OE", 0x152}, {"dotlessi", 0x131}, {"Eacute", 0xC9}, {"Adieresis", 0xC4},
      {"Odieresis", 0xD6}, {"Udieresis", 0xDC},
  };
  return table;
}

std::u32string utf16be_to_u32(std::string_view bytes) {
  std::u32string out;
  for (std::size_t i = 0; i + 1 < bytes.size(); i += 2) {
    char32_t u = (static_cast<unsigned char>(bytes[i]) << 8) | static_cast<unsigned char>(bytes[i + 1]);
    if (u >= 0xD800 && u <= 0xDBFF && i + 3 < bytes.size()) {
      const char32_t lo = (static_cast<unsigned char>(bytes[i + 2]) << 8) |
                          static_cast<unsigned char>(bytes[i + 3]);
      if (lo >= 0xDC00 && lo <= 0xDFFF) {
        u = 0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00);
        i += 2;
      }
    }
    out.push_back(u);
  }
  if (bytes.size() == 1) out.push_back(static_cast<unsigned char>(bytes[0]));
  return out;
}

std::uint32_t bytes_to_code(std::string_view s) {
  std::uint32_t v = 0;
  for (char c : s) v = (v << 8) | static_cast<unsigned char>(c);
  return v;
}

std::string strip_subset_prefix(const std::string& name) {
  if (name.size() > 7 && name[6] == '+') {
    bool upper = true;
    for (int i = 0; i < 6; ++i) upper = upper && name[i] >= 'A' && name[i] <= 'Z';
    if (upper) return name.substr(7);
  }
  return name;
}

}  // namespace

char32_t glyph_name_to_unicode(std::string_view name) {
  const auto& t = glyph_table();
  if (auto it = t.find(name); it != t.end()) return it->second;
  if (name.size() == 1) {
    const char c = name[0];
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return static_cast<char32_t>(c);
  }
  auto parse_hex = [](std::string_view h) -> char32_t {
    std::uint32_t v = 0;
    auto res = std::from_chars(h.data(), h.data() + h.size(), v, 16);
    if (res.ec != std::errc() || res.ptr != h.data() + h.size()) return 0;
    return v;
  };
  if (name.size() == 7 && name.substr(0, 3) == "uni") return parse_hex(name.substr(3));
  if (name.size() >= 5 && name.size() <= 7 && name[0] == 'u') return parse_hex(name.substr(1));
  // Suffixed variants such as "a.sc" or "one.oldstyle".
  if (auto dot = name.find('.'); dot != std::string_view::npos && dot > 0) {
    return glyph_name_to_unicode(name.substr(0, dot));
  }
  return 0;
}

ParsedCMap parse_to_unicode_cmap(std::string_view cmap) {
  ParsedCMap out;
  Lexer lx(cmap);
  std::vector<LexToken> operands;
  for (;;) {
    LexToken t = lx.next();
    if (t.kind == TokenKind::end) break;
    if (t.kind != TokenKind::keyword) {
      if (t.kind == TokenKind::array_begin) {
        // Keep arrays inline as a marker followed by elements.
        operands.push_back(t);
        continue;
      }
      operands.push_back(std::move(t));
      continue;
    }
    if (t.text == "endcodespacerange") {
      for (std::size_t i = 0; i + 1 < operands.size(); i += 2) {
        if (operands[i].kind != TokenKind::string || operands[i + 1].kind != TokenKind::string) continue;
        out.codespace.push_back(CodeRange{bytes_to_code(operands[i].text), bytes_to_code(operands[i + 1].text),
                                          static_cast<int>(std::max<std::size_t>(1, operands[i].text.size()))});
      }
    } else if (t.text == "endbfchar") {
      for (std::size_t i = 0; i + 1 < operands.size(); i += 2) {
        if (operands[i].kind != TokenKind::string) continue;
        const std::uint32_t code = bytes_to_code(operands[i].text);
        const LexToken& dst = operands[i + 1];
        if (dst.kind == TokenKind::string) {
          out.mapping[code] = utf16be_to_u32(dst.text);
        } else if (dst.kind == TokenKind::name) {
          if (char32_t u = glyph_name_to_unicode(dst.text)) out.mapping[code] = std::u32string(1, u);
        }
      }
    } else if (t.text == "endbfrange") {
      std::size_t i = 0;
      while (i + 2 < operands.size()) {
        if (operands[i].kind != TokenKind::string || operands[i + 1].kind != TokenKind::string) {
          ++i;
          continue;
        }
        const std::uint32_t lo = bytes_to_code(operands[i].text);
        const std::uint32_t hi = bytes_to_code(operands[i + 1].text);
        const LexToken& dst = operands[i + 2];
        if (dst.kind == TokenKind::string) {
          std::u32string base = utf16be_to_u32(dst.text);
          for (std::uint32_t c = lo; c <= hi && c - lo < 65536; ++c) {
            std::u32string v = base;
            if (!v.empty()) v.back() += (c - lo);
            out.mapping[c] = v;
          }
          i += 3;
        } else if (dst.kind == TokenKind::array_begin) {
          std::size_t j = i + 3;
          std::uint32_t c = lo;
          while (j < operands.size() && operands[j].kind == TokenKind::string) {
            if (c <= hi) out.mapping[c] = utf16be_to_u32(operands[j].text);
            ++c;
            ++j;
          }
          i = j;
        } else {
          i += 3;
        }
      }
    }
    if (t.text.rfind("begin", 0) == 0 || t.text.rfind("end", 0) == 0 || t.text == "def") operands.clear();
  }
  return out;
}

Font Font::fallback() {
  Font f;
  f.name_ = "Helvetica";
  f.encoding_ = make_encoding(BaseEncoding::win_ansi);
  f.standard_metrics_ = 1;
  return f;
}

Font Font::load(const File& file, const Dict& fd) {
  Font f;
  const std::string subtype = file.resolve(lookup(fd, "Subtype")).is_name()
                                  ? file.resolve(lookup(fd, "Subtype")).name()
                                  : std::string("Type1");
  const Object base_font = file.resolve(lookup(fd, "BaseFont"));
  f.name_ = base_font.is_name() ? strip_subset_prefix(base_font.name()) : subtype;

  Dict descriptor_owner = fd;
  if (subtype == "Type0") {
    f.composite_ = true;
    f.default_width_ = 1.0;
    const Object desc = file.resolve(lookup(fd, "DescendantFonts"));
    Object cid;
    if (desc.is_array() && !desc.array().empty()) cid = file.resolve(desc.array()[0]);
    if (cid.is_dict()) {
      descriptor_owner = cid.dict();
      const Object dw = file.resolve(lookup(cid.dict(), "DW"));
      if (dw.is_number()) f.default_width_ = dw.as_number() / 1000.0;
      const Object w = file.resolve(lookup(cid.dict(), "W"));
      if (w.is_array()) {
        const Array& a = w.array();
        std::size_t i = 0;
        while (i < a.size()) {
          const Object first = file.resolve(a[i]);
          if (i + 1 >= a.size()) break;
          const Object second = file.resolve(a[i + 1]);
          if (second.is_array()) {
            std::uint32_t c = static_cast<std::uint32_t>(first.as_int());
            for (const auto& v : second.array()) f.widths_[c++] = file.resolve(v).as_number();
            i += 2;
          } else if (i + 2 < a.size()) {
            const std::int64_t lo = first.as_int();
            const std::int64_t hi = second.as_int();
            const double width = file.resolve(a[i + 2]).as_number();
            for (std::int64_t c = lo; c <= hi && c - lo < 65536; ++c) f.widths_[static_cast<std::uint32_t>(c)] = width;
            i += 3;
          } else {
            break;
          }
        }
      }
    }
    const Object enc = file.resolve(lookup(fd, "Encoding"));
    if (enc.is_stream()) {
      try {
        f.codespace_ = parse_to_unicode_cmap(decode_stream(enc.stream(), &file)).codespace;
      } catch (...) {
      }
    }
    if (f.codespace_.empty()) f.codespace_.push_back(CodeRange{0, 0xFFFF, 2});
  } else {
    if (subtype == "Type3") {
      f.type3_ = true;
      const Object m = file.resolve(lookup(fd, "FontMatrix"));
      if (m.is_array() && m.array().size() >= 4) {
        f.width_scale_ = std::abs(file.resolve(m.array()[0]).as_number());
        if (f.width_scale_ == 0.0) f.width_scale_ = 0.001;
      }
    }
    const bool symbolic_name = f.name_.find("Symbol") != std::string::npos;
    BaseEncoding base = symbolic_name ? BaseEncoding::symbol
                        : subtype == "TrueType" ? BaseEncoding::win_ansi
                                                : BaseEncoding::standard;
    const Object enc = file.resolve(lookup(fd, "Encoding"));
    const Object* differences = nullptr;
    Object diff_holder;
    auto base_from_name = [&](const std::string& n) {
      if (n == "WinAnsiEncoding") base = BaseEncoding::win_ansi;
      else if (n == "MacRomanEncoding") base = BaseEncoding::mac_roman;
      else if (n == "StandardEncoding") base = BaseEncoding::standard;
    };
    if (enc.is_name()) {
      base_from_name(enc.name());
    } else if (enc.is_dict()) {
      const Object be = file.resolve(lookup(enc.dict(), "BaseEncoding"));
      if (be.is_name()) base_from_name(be.name());
      diff_holder = file.resolve(lookup(enc.dict(), "Differences"));
      if (diff_holder.is_array()) differences = &diff_holder;
    }
    f.encoding_ = make_encoding(base);
    if (differences) {
      std::int64_t code = 0;
      for (const auto& item : differences->array()) {
        const Object v = file.resolve(item);
        if (v.is_number()) {
          code = v.as_int();
        } else if (v.is_name()) {
          if (code >= 0 && code < 256) {
            const char32_t u = glyph_name_to_unicode(v.name());
            f.encoding_[static_cast<std::size_t>(code)] = u ? u : 0xFFFD;
          }
          ++code;
        }
      }
    }
    const Object widths = file.resolve(lookup(fd, "Widths"));
    if (widths.is_array()) {
      std::int64_t code = file.resolve(lookup(fd, "FirstChar")).as_int();
      for (const auto& w : widths.array()) f.widths_[static_cast<std::uint32_t>(code++)] = file.resolve(w).as_number();
    } else if (f.name_.find("Courier") != std::string::npos) {
      f.standard_metrics_ = 2;
    } else {
      f.standard_metrics_ = 1;
    }
    f.default_width_ = 0.0;
  }

  const Object desc = file.resolve(lookup(descriptor_owner, "FontDescriptor"));
  if (desc.is_dict()) {
    const Object asc = file.resolve(lookup(desc.dict(), "Ascent"));
    const Object dsc = file.resolve(lookup(desc.dict(), "Descent"));
    if (asc.is_number() && asc.as_number() > 0) f.ascent_ = asc.as_number() / 1000.0;
    if (dsc.is_number() && dsc.as_number() < 0) f.descent_ = dsc.as_number() / 1000.0;
    const Object mw = file.resolve(lookup(desc.dict(), "MissingWidth"));
    if (!f.composite_ && mw.is_number()) f.default_width_ = mw.as_number() * f.width_scale_;
  }
  if (f.type3_) {
    f.ascent_ = 0.8;
    f.descent_ = -0.2;
  }

  const Object tu = file.resolve(lookup(fd, "ToUnicode"));
  if (tu.is_stream()) {
    try {
      ParsedCMap cm = parse_to_unicode_cmap(decode_stream(tu.stream(), &file));
      f.to_unicode_ = std::move(cm.mapping);
      if (f.composite_ && !cm.codespace.empty() && f.codespace_.size() == 1 &&
          f.codespace_[0].bytes == 2 && f.codespace_[0].high == 0xFFFF) {
        f.codespace_ = std::move(cm.codespace);
      }
    } catch (...) {
      // A broken ToUnicode only costs us the text mapping.
    }
  }
  return f;
}

std::vector<CharCode> Font::split_codes(std::string_view bytes) const {
  std::vector<CharCode> out;
  if (!composite_) {
    out.reserve(bytes.size());
    for (char c : bytes) out.push_back(CharCode{static_cast<unsigned char>(c), 1});
    return out;
  }
  std::size_t i = 0;
  while (i < bytes.size()) {
    int taken = 0;
    for (int n = 1; n <= 4 && taken == 0; ++n) {
      if (i + n > bytes.size()) break;
      const std::uint32_t code = bytes_to_code(bytes.substr(i, n));
      for (const auto& r : codespace_) {
        if (r.bytes == n && code >= r.low && code <= r.high) {
          taken = n;
          out.push_back(CharCode{code, n});
          break;
        }
      }
    }
    if (taken == 0) {
      // Not in any range: consume the most common width.
      const int n = static_cast<int>(std::min<std::size_t>(codespace_.empty() ? 2 : codespace_.front().bytes, bytes.size() - i));
      out.push_back(CharCode{bytes_to_code(bytes.substr(i, n)), n});
      taken = n;
    }
    i += static_cast<std::size_t>(taken);
  }
  return out;
}

double Font::width(std::uint32_t code) const {
  if (auto it = widths_.find(code); it != widths_.end()) return it->second * width_scale_;
  if (standard_metrics_ == 2) return 0.6;
  if (standard_metrics_ == 1) {
    if (code >= 32 && code <= 126) return kHelveticaWidths[code - 32] / 1000.0;
    return 0.556;
  }
  return default_width_;
}

std::u32string Font::to_unicode(std::uint32_t code) const {
  if (auto it = to_unicode_.find(code); it != to_unicode_.end()) return it->second;
  if (composite_) return std::u32string(1, U'�');
  if (code < 256) {
    const char32_t u = encoding_[code];
    if (u != 0) return std::u32string(1, u);
  }
  return std::u32string(1, U'�');
}

}  // namespace paperjson::pdf
