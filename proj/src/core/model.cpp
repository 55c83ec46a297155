#include "core/model.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "core/error.hpp"
#include "core/text.hpp"

namespace paperjson {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::degenerate_box: return "degenerate-box";
    case ErrorCode::missing_stage: return "missing-stage";
    case ErrorCode::path_not_found: return "path-not-found";
    case ErrorCode::no_pdfs_in_directory: return "no-pdfs-in-directory";
    case ErrorCode::pdf_parse: return "pdf-parse";
    case ErrorCode::pdf_encrypted: return "pdf-encrypted";
    case ErrorCode::annotation_file: return "annotation-file";
    case ErrorCode::unknown_page: return "unknown-page";
    case ErrorCode::unknown_label: return "unknown-label";
    case ErrorCode::unknown_step: return "unknown-step";
    case ErrorCode::invalid_option: return "invalid-option";
    case ErrorCode::invalid_pipeline: return "invalid-pipeline";
    case ErrorCode::unknown_venue: return "unknown-venue";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Token make_token(std::size_t id, std::string_view raw, const BBox& box, std::string font_name,
                 double font_size, std::size_t page) {
  std::string t = text::trim(raw);
  if (t.empty()) throw Error(ErrorCode::invalid_argument, "token text is empty");
  if (!(font_size > 0.0)) throw Error(ErrorCode::invalid_argument, "token font size must be positive");
  return Token{id, std::move(t), box, std::move(font_name), font_size, page};
}

const char* to_string(DrawnKind kind) {
  switch (kind) {
    case DrawnKind::rectangle: return "rectangle";
    case DrawnKind::line: return "line";
    case DrawnKind::curve: return "curve";
    case DrawnKind::image: return "image";
  }
  return "?";
}

const char* to_string(ObjectLabel label) {
  switch (label) {
    case ObjectLabel::figure: return "figure";
    case ObjectLabel::table: return "table";
    case ObjectLabel::equation: return "equation";
    case ObjectLabel::caption: return "caption";
    case ObjectLabel::footnote: return "footnote";
  }
  return "?";
}

std::optional<ObjectLabel> parse_object_label(std::string_view s) {
  for (auto l : {ObjectLabel::figure, ObjectLabel::table, ObjectLabel::equation,
                 ObjectLabel::caption, ObjectLabel::footnote}) {
    if (s == to_string(l)) return l;
  }
  return std::nullopt;
}

double dominant_font_size(const std::vector<Token>& tokens) {
  std::map<double, std::size_t> weight;
  for (const auto& t : tokens) weight[t.font_size] += std::max<std::size_t>(1, t.text.size());
  double best = 0.0;
  std::size_t best_w = 0;
  for (const auto& [size, w] : weight) {
    if (w >= best_w) {  // ascending keys, so >= prefers the larger size on ties
      best = size;
      best_w = w;
    }
  }
  return best;
}

double dominant_font_size(const std::vector<Line>& lines) {
  std::vector<Token> all;
  for (const auto& l : lines) all.insert(all.end(), l.tokens.begin(), l.tokens.end());
  return dominant_font_size(all);
}

Line Line::from_tokens(std::vector<Token> tokens) {
  if (tokens.empty()) throw Error(ErrorCode::invalid_argument, "line needs at least one token");
  std::stable_sort(tokens.begin(), tokens.end(), [](const Token& a, const Token& b) {
    if (a.bbox.x0() != b.bbox.x0()) return a.bbox.x0() < b.bbox.x0();
    return a.id < b.id;
  });
  BBox box = tokens.front().bbox;
  const std::size_t page = tokens.front().page;
  for (const auto& t : tokens) {
    if (t.page != page) throw Error(ErrorCode::invalid_argument, "line tokens span pages");
    box = box.united(t.bbox);
  }
  const double size = paperjson::dominant_font_size(tokens);
  return Line{std::move(tokens), box, page, size};
}

std::string Line::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.text;
  }
  return out;
}

Paragraph Paragraph::from_lines(std::vector<Line> lines) {
  if (lines.empty()) throw Error(ErrorCode::invalid_argument, "paragraph needs at least one line");
  std::vector<std::string> texts;
  texts.reserve(lines.size());
  BBox box = lines.front().bbox;
  std::size_t first = lines.front().page;
  std::size_t last = first;
  for (const auto& l : lines) {
    texts.push_back(l.text());
    box = box.united(l.bbox);
    first = std::min(first, l.page);
    last = std::max(last, l.page);
  }
  const double size = paperjson::dominant_font_size(lines);
  const int column = lines.front().column;
  const bool span = lines.front().span_all;
  Paragraph p{std::move(lines), text::join_lines(texts), box, first, last, size, column, span};
  return p;
}

int ColumnLayout::column_of(double x) const {
  int c = 0;
  for (double b : boundaries) {
    if (x >= b) ++c;
  }
  return c;
}

bool Document::has_stage(std::string_view step) const {
  return stage_flags.count(std::string(step)) > 0;
}

void Document::require_stage(std::string_view step, std::string_view needed) const {
  if (!has_stage(needed)) {
    throw Error(ErrorCode::missing_stage,
                std::string(step) + " requires " + std::string(needed) + " to have run");
  }
}

void Document::mark_stage(std::string_view step) { stage_flags.insert(std::string(step)); }

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& p : pages) n += p.tokens.size();
  return n;
}

const ColumnLayout* Document::layout_for(std::size_t page) const {
  for (const auto& l : layouts) {
    if (l.page == page) return &l;
  }
  return nullptr;
}

namespace {

// Filters tokens inside a line list, rebuilding shrunken lines and dropping
// emptied ones. Column/span flags survive the rebuild.
template <typename Pred>
bool filter_lines(std::vector<Line>& lines, Pred keep) {
  bool changed = false;
  std::vector<Line> out;
  out.reserve(lines.size());
  for (auto& l : lines) {
    std::vector<Token> kept;
    for (const auto& t : l.tokens) {
      if (keep(t)) kept.push_back(t);
    }
    if (kept.size() == l.tokens.size()) {
      out.push_back(std::move(l));
      continue;
    }
    changed = true;
    if (kept.empty()) continue;
    Line rebuilt = Line::from_tokens(std::move(kept));
    rebuilt.column = l.column;
    rebuilt.span_all = l.span_all;
    out.push_back(std::move(rebuilt));
  }
  lines = std::move(out);
  return changed;
}

template <typename Pred>
void filter_paragraphs(std::vector<Paragraph>& paras, Pred keep) {
  std::vector<Paragraph> out;
  for (auto& p : paras) {
    const ParagraphRole role = p.role;
    if (!filter_lines(p.lines, keep)) {
      out.push_back(std::move(p));
      continue;
    }
    if (p.lines.empty()) continue;
    Paragraph rebuilt = Paragraph::from_lines(std::move(p.lines));
    rebuilt.role = role;
    out.push_back(std::move(rebuilt));
  }
  paras = std::move(out);
}

}  // namespace

std::size_t remove_tokens(Document& doc, const std::function<bool(const Token&)>& drop,
                          std::string_view step) {
  std::set<std::size_t> ids;
  for (auto& page : doc.pages) {
    std::vector<Token> kept;
    kept.reserve(page.tokens.size());
    for (auto& t : page.tokens) {
      if (drop(t)) {
        ids.insert(t.id);
        doc.removed.push_back(RemovedToken{t, std::string(step)});
      } else {
        kept.push_back(std::move(t));
      }
    }
    page.tokens = std::move(kept);
  }
  if (ids.empty()) return 0;
  auto keep = [&](const Token& t) { return ids.count(t.id) == 0; };
  filter_lines(doc.lines, keep);
  filter_paragraphs(doc.paragraphs, keep);
  return ids.size();
}

void detach_tokens(Document& doc, const std::set<std::size_t>& ids) {
  if (ids.empty()) return;
  for (auto& page : doc.pages) {
    std::erase_if(page.tokens, [&](const Token& t) { return ids.count(t.id) > 0; });
  }
}

}  // namespace paperjson
