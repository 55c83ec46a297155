#include "ingest/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/text.hpp"
#include "ingest/content_interpreter.hpp"
#include "ingest/pdf_file.hpp"

namespace paperjson {

namespace fs = std::filesystem;

namespace {

constexpr double kWordGapFactor = 0.25;
constexpr double kMinVerticalOverlap = 0.5;

// Glyph in page coordinates (top-left origin).
struct PlacedGlyph {
  std::u32string text;
  double x0, y0, x1, y1;
  double size;
  const std::string* font;
};

double round_size(double s) { return std::round(s * 100.0) / 100.0; }

bool all_whitespace(const std::u32string& s) {
  return std::all_of(s.begin(), s.end(), [](char32_t c) { return text::is_whitespace(c); });
}

double vertical_overlap(const PlacedGlyph& a, const PlacedGlyph& b) {
  const double inter = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  const double shorter = std::min(a.y1 - a.y0, b.y1 - b.y0);
  if (shorter <= 0.0) return inter >= 0.0 ? 1.0 : 0.0;
  return std::max(0.0, inter) / shorter;
}

class WordBuilder {
 public:
  WordBuilder(std::size_t page, double width, double height, std::size_t& next_id)
      : page_(page), width_(width), height_(height), next_id_(next_id) {}

  void add(const PlacedGlyph& g) {
    if (g.text.empty()) return;
    if (all_whitespace(g.text)) {
      flush();
      return;
    }
    if (!glyphs_.empty()) {
      const PlacedGlyph& prev = glyphs_.back();
      const double ref = std::max(prev.size, g.size);
      const bool gap = g.x0 - prev.x1 > kWordGapFactor * ref;
      const bool backward = 0.5 * (g.x0 + g.x1) < prev.x0;
      const bool off_line = vertical_overlap(prev, g) < kMinVerticalOverlap;
      if (gap || backward || off_line) flush();
    }
    glyphs_.push_back(g);
  }

  void flush() {
    if (glyphs_.empty()) return;
    std::u32string raw;
    double x0 = glyphs_.front().x0, y0 = glyphs_.front().y0;
    double x1 = glyphs_.front().x1, y1 = glyphs_.front().y1;
    double size = 0.0;
    for (const auto& g : glyphs_) {
      raw += g.text;
      x0 = std::min(x0, g.x0);
      y0 = std::min(y0, g.y0);
      x1 = std::max(x1, g.x1);
      y1 = std::max(y1, g.y1);
      size = std::max(size, g.size);
    }
    const std::string font = *glyphs_.front().font;
    glyphs_.clear();

    std::string utf8 = text::expand_ligatures(text::encode_utf8(raw));
    if (text::trim(utf8).empty()) return;
    x0 = std::clamp(x0, 0.0, width_);
    x1 = std::clamp(x1, 0.0, width_);
    y0 = std::clamp(y0, 0.0, height_);
    y1 = std::clamp(y1, 0.0, height_);
    auto box = BBox::try_make(x0, y0, x1, y1);
    if (!box || !(size > 0.0)) {
      ++dropped;
      return;
    }
    tokens.push_back(make_token(next_id_++, utf8, *box, font, size, page_));
  }

  std::vector<Token> tokens;
  std::size_t dropped = 0;

 private:
  std::size_t page_;
  double width_, height_;
  std::size_t& next_id_;
  std::vector<PlacedGlyph> glyphs_;
};

std::optional<DrawnObject> to_drawn(const pdf::Mark& m, const double box[4], double width,
                                    double height, std::size_t page) {
  double x0 = std::clamp(m.x0 - box[0], 0.0, width);
  double x1 = std::clamp(m.x1 - box[0], 0.0, width);
  double y0 = std::clamp(box[3] - m.y1, 0.0, height);
  double y1 = std::clamp(box[3] - m.y0, 0.0, height);
  if (m.kind == DrawnKind::line) {
    if (!(x0 < x1) && !(y0 < y1)) return std::nullopt;
    return DrawnObject{m.kind, BBox::flat(x0, y0, x1, y1), page};
  }
  auto b = BBox::try_make(x0, y0, x1, y1);
  if (!b) return std::nullopt;
  return DrawnObject{m.kind, *b, page};
}

}  // namespace

std::vector<fs::path> list_pdfs(const fs::path& input) {
  std::error_code ec;
  if (!fs::exists(input, ec)) {
    throw Error(ErrorCode::path_not_found, "input path not found: " + input.string());
  }
  if (!fs::is_directory(input, ec)) return {input};
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(input, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pdf") out.push_back(entry.path());
  }
  if (out.empty()) {
    throw Error(ErrorCode::no_pdfs_in_directory, "no PDF files in directory: " + input.string());
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return out;
}

RawDocument load_document_from_memory(std::string bytes, std::string source_path) {
  pdf::File file(std::move(bytes));
  RawDocument doc;
  doc.source_path = std::move(source_path);
  if (file.xref_was_rebuilt()) doc.warnings.push_back("cross-reference table damaged; rebuilt by scanning");

  const auto entries = file.pages();
  if (entries.empty()) throw Error(ErrorCode::pdf_parse, "document has no pages");

  pdf::ContentInterpreter interp(file);
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& entry = entries[i];
    PageData page;
    page.index = i;
    page.width = entry.box[2] - entry.box[0];
    page.height = entry.box[3] - entry.box[1];

    pdf::PageMarks marks;
    try {
      const pdf::Object res = file.resolve(pdf::lookup(entry.dict, "Resources"));
      marks = interp.run(file.page_content(entry), res.is_dict() ? res.dict() : pdf::Dict{});
    } catch (const Error& e) {
      doc.warnings.push_back("page " + std::to_string(i) + ": content unreadable (" + e.what() + ")");
    }

    WordBuilder words(i, page.width, page.height, next_id);
    for (const auto& g : marks.glyphs) {
      words.add(PlacedGlyph{g.text, g.x0 - entry.box[0], entry.box[3] - g.y1, g.x1 - entry.box[0],
                            entry.box[3] - g.y0, round_size(g.font_size), &g.font_name});
    }
    words.flush();
    page.tokens = std::move(words.tokens);
    for (const auto& m : marks.marks) {
      if (auto d = to_drawn(m, entry.box, page.width, page.height, i)) page.drawn.push_back(*d);
    }
    if (marks.skipped > 0) {
      doc.warnings.push_back("page " + std::to_string(i) + ": skipped " + std::to_string(marks.skipped) +
                             " malformed objects");
    }
    if (words.dropped > 0) {
      doc.warnings.push_back("page " + std::to_string(i) + ": dropped " + std::to_string(words.dropped) +
                             " zero-area tokens");
    }
    doc.pages.push_back(std::move(page));
  }

  const bool no_text = std::all_of(doc.pages.begin(), doc.pages.end(),
                                   [](const PageData& p) { return p.tokens.empty(); });
  if (no_text) doc.warnings.push_back("no text found; the PDF may be scanned or image-only");
  return doc;
}

RawDocument load_document(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_document_from_memory(std::move(ss).str(), path.string());
}

std::vector<LoadResult> load_docs(const fs::path& input) {
  std::vector<LoadResult> out;
  for (const auto& p : list_pdfs(input)) {
    LoadResult r;
    r.path = p;
    try {
      r.document = load_document(p);
    } catch (const Error& e) {
      r.error = e.what();
      r.error_code = e.code();
    } catch (const std::exception& e) {
      r.error = e.what();
      r.error_code = ErrorCode::pdf_parse;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DrawnObject> extract_drawn_objects(const PageData& page) { return page.drawn; }

Document make_document(RawDocument raw) {
  Document doc;
  doc.source_path = std::move(raw.source_path);
  doc.pages = std::move(raw.pages);
  doc.warnings = std::move(raw.warnings);
  doc.mark_stage("load_docs");
  return doc;
}

}  // namespace paperjson
