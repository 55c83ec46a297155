#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core/geometry.hpp"

namespace paperjson {

/// One extracted word.
struct Token {
  std::size_t id = 0;  // unique within a document, assigned at load
  std::string text;
  BBox bbox;
  std::string font_name;
  double font_size = 0.0;
  std::size_t page = 0;
};

// Validating factory: trims the text, rejects empty text and non-positive
// font sizes.
Token make_token(std::size_t id, std::string_view text, const BBox& box,
                 std::string font_name, double font_size, std::size_t page);

enum class DrawnKind { rectangle, line, curve, image };
const char* to_string(DrawnKind kind);

struct DrawnObject {
  DrawnKind kind;
  BBox bbox;  // may be flat only for kind == line
  std::size_t page = 0;
};

enum class ObjectLabel { figure, table, equation, caption, footnote };
const char* to_string(ObjectLabel label);
std::optional<ObjectLabel> parse_object_label(std::string_view s);

struct DetectedObject {
  ObjectLabel label;
  BBox bbox;
  std::size_t page = 0;
  double score = 1.0;

  friend bool operator==(const DetectedObject&, const DetectedObject&) = default;
};

struct Line {
  std::vector<Token> tokens;  // ascending x0
  BBox bbox;
  std::size_t page = 0;
  double dominant_font_size = 0.0;
  int column = -1;  // -1 until concat_columns assigns one
  bool span_all = false;

  // Sorts tokens by x0 (ties by id) and derives bbox and dominant size.
  // Requires a non-empty token list on a single page.
  static Line from_tokens(std::vector<Token> tokens);

  std::string text() const;
};

enum class ParagraphRole { unclassified, body, heading, title };

struct Paragraph {
  std::vector<Line> lines;
  std::string text;
  BBox bbox;
  std::size_t first_page = 0;
  std::size_t last_page = 0;
  double dominant_font_size = 0.0;
  int column = -1;
  bool span_all = false;
  ParagraphRole role = ParagraphRole::unclassified;

  static Paragraph from_lines(std::vector<Line> lines);
};

// Size carrying the most characters; ties go to the larger size.
double dominant_font_size(const std::vector<Token>& tokens);
double dominant_font_size(const std::vector<Line>& lines);

struct ColumnLayout {
  std::size_t page = 0;
  std::vector<double> boundaries;  // strictly increasing; empty = one column

  int column_of(double x) const;
};

struct PageData {
  std::size_t index = 0;
  double width = 0.0;
  double height = 0.0;
  std::vector<Token> tokens;
  std::vector<DrawnObject> drawn;
};

struct CaptionRecord {
  DetectedObject caption;
  std::optional<DetectedObject> target;  // null when unmatched
  ObjectLabel kind = ObjectLabel::figure;  // figure or table
  std::string text;
  int column = 0;
  std::vector<Line> lines;  // the lines the text came from
};

struct RemovedToken {
  Token token;
  std::string step;
};

struct Document {
  std::string source_path;
  std::vector<PageData> pages;
  std::vector<ColumnLayout> layouts;  // one per page once extract_lines ran
  std::vector<Line> lines;
  std::vector<Paragraph> paragraphs;
  std::vector<DetectedObject> objects;
  std::vector<Paragraph> footnotes;
  std::vector<CaptionRecord> captions;
  std::set<std::string> stage_flags;
  std::vector<std::string> warnings;
  std::vector<RemovedToken> removed;

  bool has_stage(std::string_view step) const;
  // Throws Error(missing_stage) naming both steps.
  void require_stage(std::string_view step, std::string_view needed) const;
  void mark_stage(std::string_view step);

  std::size_t token_count() const;
  const ColumnLayout* layout_for(std::size_t page) const;
};

// Drops every surviving token matching `drop` from pages, lines and
// paragraphs, rebuilding the containers that shrink and deleting the ones
// that become empty. Dropped tokens are logged in doc.removed under `step`.
// Returns how many tokens were removed.
std::size_t remove_tokens(Document& doc, const std::function<bool(const Token&)>& drop,
                          std::string_view step);

// Removes tokens from the page lists only (no logging); used when the tokens
// move elsewhere (captions, footnotes).
void detach_tokens(Document& doc, const std::set<std::size_t>& ids);

struct SectionEntry {
  std::string title;
  std::vector<std::string> content;

  friend bool operator==(const SectionEntry&, const SectionEntry&) = default;
};

struct CaptionEntry {
  std::string label;  // "figure" or "table"
  std::string text;

  friend bool operator==(const CaptionEntry&, const CaptionEntry&) = default;
};

struct StructuredDocument {
  std::optional<std::string> title;
  std::vector<SectionEntry> body;
  std::vector<std::string> footnotes;
  std::vector<CaptionEntry> captions;

  friend bool operator==(const StructuredDocument&, const StructuredDocument&) = default;
};

}  // namespace paperjson
