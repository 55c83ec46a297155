#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ingest/pdf_object.hpp"

namespace paperjson::pdf {

class File;

struct CodeRange {
  std::uint32_t low = 0;
  std::uint32_t high = 0;
  int bytes = 1;
};

struct CharCode {
  std::uint32_t code = 0;
  int bytes = 1;
};

// Metrics and text mapping for one font resource.
class Font {
 public:
  // Builds a font from its dictionary. Never throws for odd fonts; missing
  // pieces fall back to standard metrics.
  static Font load(const File& file, const Dict& font_dict);

  // A Helvetica-metric simple font; used when a Tf names a missing resource.
  static Font fallback();

  std::vector<CharCode> split_codes(std::string_view bytes) const;

  // Advance in text space units per unit font size.
  double width(std::uint32_t code) const;
  std::u32string to_unicode(std::uint32_t code) const;

  const std::string& name() const { return name_; }
  double ascent() const { return ascent_; }
  double descent() const { return descent_; }
  bool is_composite() const { return composite_; }

 private:
  std::string name_;
  bool composite_ = false;
  bool type3_ = false;
  double ascent_ = 0.8;
  double descent_ = -0.2;
  double default_width_ = 0.5;
  double width_scale_ = 0.001;  // glyph units to text space
  std::map<std::uint32_t, double> widths_;  // raw glyph units
  std::map<std::uint32_t, std::u32string> to_unicode_;
  std::array<char32_t, 256> encoding_{};
  std::vector<CodeRange> codespace_;
  int standard_metrics_ = 0;  // 0 none, 1 Helvetica-like, 2 Courier
};

// Glyph-name to Unicode for the names that matter in papers; also parses
// uniXXXX / uXXXX forms. Returns 0 when unknown.
char32_t glyph_name_to_unicode(std::string_view name);

// Parses the bfchar/bfrange/codespacerange sections of a ToUnicode CMap.
struct ParsedCMap {
  std::map<std::uint32_t, std::u32string> mapping;
  std::vector<CodeRange> codespace;
};
ParsedCMap parse_to_unicode_cmap(std::string_view cmap);

}  // namespace paperjson::pdf
