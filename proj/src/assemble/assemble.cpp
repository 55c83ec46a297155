#include "assemble/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/text.hpp"

namespace paperjson {

namespace {

constexpr double kBinWidth = 4.0;
constexpr double kMinGutter = 18.0;
constexpr double kMidlineTolerance = 0.15;
constexpr double kSpanAllFraction = 0.8;

struct Row {
  std::vector<Token> tokens;
  BBox box;
  int column;
};

std::vector<Row> rows_for(std::vector<Token> tokens, double min_overlap, int column) {
  std::sort(tokens.begin(), tokens.end(), [](const Token& a, const Token& b) {
    if (a.bbox.y0() != b.bbox.y0()) return a.bbox.y0() < b.bbox.y0();
    if (a.bbox.x0() != b.bbox.x0()) return a.bbox.x0() < b.bbox.x0();
    return a.id < b.id;
  });
  std::vector<Row> rows;
  for (auto& t : tokens) {
    Row* best = nullptr;
    double best_overlap = 0.0;
    for (auto& r : rows) {
      const double ov = vertical_overlap_fraction(r.box, t.bbox);
      if (ov >= min_overlap && ov > best_overlap) {
        best = &r;
        best_overlap = ov;
      }
    }
    if (best) {
      best->box = best->box.united(t.bbox);
      best->tokens.push_back(std::move(t));
    } else {
      const BBox box = t.bbox;
      rows.push_back(Row{{std::move(t)}, box, column});
    }
  }
  return rows;
}

double row_em(const Row& r) {
  double s = 0.0;
  for (const auto& t : r.tokens) s = std::max(s, t.font_size);
  return s;
}

int effective_column(const Line& l) { return l.column < 0 ? 0 : l.column; }

}  // namespace

std::vector<Line> build_lines(const std::vector<Token>& tokens, double min_overlap,
                              const ColumnLayout* layout) {
  const bool split = layout && !layout->boundaries.empty();
  const int ncols = split ? static_cast<int>(layout->boundaries.size()) + 1 : 1;
  std::vector<std::vector<Token>> groups(ncols);
  for (const auto& t : tokens) {
    const int c = split ? layout->column_of(t.bbox.center_x()) : 0;
    groups[c].push_back(t);
  }
  std::vector<Row> rows;
  for (int c = 0; c < ncols; ++c) {
    auto part = rows_for(std::move(groups[c]), min_overlap, c);
    std::move(part.begin(), part.end(), std::back_inserter(rows));
  }

  // Re-join rows that continue across a boundary with a word-sized gap.
  std::vector<std::size_t> parent(rows.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  if (split) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t best = rows.size();
      double best_gap = 0.0;
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].column != rows[i].column + 1) continue;
        if (vertical_overlap_fraction(rows[i].box, rows[j].box) < min_overlap) continue;
        const double gap = rows[j].box.x0() - rows[i].box.x1();
        const double em = std::max(row_em(rows[i]), row_em(rows[j]));
        if (gap > em) continue;
        if (best == rows.size() || std::abs(gap) < best_gap) {
          best = j;
          best_gap = std::abs(gap);
        }
      }
      if (best != rows.size()) parent[find(best)] = find(i);
    }
  }
  std::vector<std::vector<Token>> merged(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& dst = merged[find(i)];
    dst.insert(dst.end(), rows[i].tokens.begin(), rows[i].tokens.end());
  }
  std::vector<Line> lines;
  for (auto& m : merged) {
    if (!m.empty()) lines.push_back(Line::from_tokens(std::move(m)));
  }
  sort_reading_order(lines);
  return lines;
}

ColumnLayout detect_columns(const PageData& page) {
  ColumnLayout layout{page.index, {}};
  if (page.tokens.empty() || page.width <= 0.0) return layout;
  const std::size_t nbins = static_cast<std::size_t>(std::ceil(page.width / kBinWidth));
  std::vector<bool> covered(nbins, false);
  const double top = 0.2 * page.height;
  const double bottom = 0.8 * page.height;
  bool any = false;
  for (const auto& t : page.tokens) {
    const double cy = t.bbox.center_y();
    if (cy < top || cy > bottom) continue;
    const auto b0 = static_cast<std::size_t>(std::floor(t.bbox.x0() / kBinWidth));
    const auto b1 = std::min(nbins - 1, static_cast<std::size_t>(std::floor(t.bbox.x1() / kBinWidth)));
    for (std::size_t b = b0; b <= b1; ++b) covered[b] = true;
    any = true;
  }
  if (!any) return layout;
  const auto first = static_cast<std::size_t>(std::find(covered.begin(), covered.end(), true) - covered.begin());
  const auto last = nbins - 1 - static_cast<std::size_t>(std::find(covered.rbegin(), covered.rend(), true) - covered.rbegin());

  const double mid = 0.5 * page.width;
  const double tol = kMidlineTolerance * page.width;
  const auto min_bins = static_cast<std::size_t>(std::ceil(kMinGutter / kBinWidth));
  double best_center = -1.0;
  std::size_t best_len = 0;
  for (std::size_t b = first; b <= last;) {
    if (covered[b]) {
      ++b;
      continue;
    }
    std::size_t e = b;
    while (e <= last && !covered[e]) ++e;
    const std::size_t len = e - b;
    const double center = 0.5 * (b + e) * kBinWidth;
    if (len >= min_bins && std::abs(center - mid) <= tol && len > best_len) {
      best_len = len;
      best_center = center;
    }
    b = e;
  }
  if (best_center > 0.0 && best_center < page.width) layout.boundaries.push_back(best_center);
  return layout;
}

void sort_reading_order(std::vector<Line>& lines) {
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return reading_order_key(a.bbox, a.page, a.column) < reading_order_key(b.bbox, b.page, b.column);
  });
}

void extract_lines(Document& doc, const Thresholds& th) {
  doc.require_stage("extract_lines", "load_docs");
  doc.layouts.clear();
  doc.lines.clear();
  doc.paragraphs.clear();
  for (const auto& page : doc.pages) {
    doc.layouts.push_back(detect_columns(page));
    auto lines = build_lines(page.tokens, th.line_overlap, &doc.layouts.back());
    std::move(lines.begin(), lines.end(), std::back_inserter(doc.lines));
  }
  sort_reading_order(doc.lines);
  doc.mark_stage("extract_lines");
}

namespace {

using Extents = std::vector<std::pair<double, double>>;

// Text extent per page over every line the document still holds; used for
// the full-width test.
Extents page_extents(const Document& doc) {
  Extents extent(doc.pages.size(), {1e300, -1e300});
  auto add = [&](const Line& l) {
    if (l.page >= extent.size()) return;
    extent[l.page].first = std::min(extent[l.page].first, l.bbox.x0());
    extent[l.page].second = std::max(extent[l.page].second, l.bbox.x1());
  };
  for (const auto& l : doc.lines) add(l);
  for (const auto& p : doc.paragraphs) {
    for (const auto& l : p.lines) add(l);
  }
  return extent;
}

void assign_columns(std::vector<Line>& lines, const Document& doc, const Extents& extent) {
  for (auto& l : lines) {
    const ColumnLayout* layout = doc.layout_for(l.page);
    l.span_all = false;
    if (!layout || layout->boundaries.empty()) {
      l.column = 0;
      continue;
    }
    const double text_width = extent[l.page].second - extent[l.page].first;
    bool crosses = false;
    for (double b : layout->boundaries) crosses = crosses || (l.bbox.x0() < b && l.bbox.x1() > b);
    if (crosses || l.bbox.width() >= kSpanAllFraction * text_width) {
      l.span_all = true;
      l.column = 0;
    } else {
      l.column = layout->column_of(l.bbox.center_x());
    }
  }
}

}  // namespace

void concat_columns(Document& doc) {
  doc.require_stage("concat_columns", "extract_lines");
  const Extents extent = page_extents(doc);
  assign_columns(doc.lines, doc, extent);
  sort_reading_order(doc.lines);
  if (!doc.paragraphs.empty()) {
    for (auto& p : doc.paragraphs) {
      assign_columns(p.lines, doc, extent);
      const ParagraphRole role = p.role;
      p = Paragraph::from_lines(std::move(p.lines));
      p.role = role;
    }
    std::stable_sort(doc.paragraphs.begin(), doc.paragraphs.end(), [](const Paragraph& a, const Paragraph& b) {
      const Line& la = a.lines.front();
      const Line& lb = b.lines.front();
      return reading_order_key(la.bbox, la.page, la.column) < reading_order_key(lb.bbox, lb.page, lb.column);
    });
  }
  doc.mark_stage("concat_columns");
}

double median_line_pitch(const std::vector<Line>& lines) {
  std::vector<double> pitches;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& a = lines[i - 1];
    const Line& b = lines[i];
    if (a.page != b.page || effective_column(a) != effective_column(b)) continue;
    const double p = b.bbox.y0() - a.bbox.y0();
    if (p > 0.0) pitches.push_back(p);
  }
  if (pitches.empty()) return 0.0;
  const std::size_t mid = pitches.size() / 2;
  std::nth_element(pitches.begin(), pitches.begin() + mid, pitches.end());
  double m = pitches[mid];
  if (pitches.size() % 2 == 0) {
    const double lower = *std::max_element(pitches.begin(), pitches.begin() + mid);
    m = 0.5 * (m + lower);
  }
  return m;
}

std::vector<Paragraph> group_paragraphs(const std::vector<Line>& lines, bool consider_font_size,
                                        const Thresholds& th, double median_pitch) {
  std::vector<Paragraph> out;
  std::vector<Line> current;
  double left = 0.0;
  auto flush = [&] {
    if (!current.empty()) out.push_back(Paragraph::from_lines(std::move(current)));
    current.clear();
  };
  for (const auto& next : lines) {
    if (!current.empty()) {
      const Line& prev = current.back();
      bool brk = prev.page != next.page || effective_column(prev) != effective_column(next) ||
                 prev.span_all != next.span_all;
      const double pitch = next.bbox.y0() - prev.bbox.y0();
      const double limit = median_pitch > 0.0 ? th.para_gap_factor * median_pitch
                                              : 1.2 * th.para_gap_factor * prev.dominant_font_size;
      brk = brk || pitch <= 0.0 || pitch > limit;
      brk = brk || (next.bbox.x0() > left + th.indent_pt &&
                    text::ends_with_terminal_punctuation(prev.text()));
      brk = brk || (consider_font_size &&
                    std::abs(next.dominant_font_size - prev.dominant_font_size) > th.size_tol_pt);
      if (brk) flush();
    }
    if (current.empty()) left = next.bbox.x0();
    left = std::min(left, next.bbox.x0());
    current.push_back(next);
  }
  flush();
  return out;
}

void extract_paragraphs(Document& doc, bool consider_font_size, const Thresholds& th) {
  doc.require_stage("extract_paragraphs", "extract_lines");
  const double median = median_line_pitch(doc.lines);
  auto paras = group_paragraphs(doc.lines, consider_font_size, th, median);
  std::move(paras.begin(), paras.end(), std::back_inserter(doc.paragraphs));
  doc.lines.clear();
  doc.mark_stage("extract_paragraphs");
}

namespace {

bool can_merge(const Paragraph& p, const Paragraph& q, bool consider_font_size, double tol) {
  auto locked = [](const Paragraph& x) {
    return x.role == ParagraphRole::heading || x.role == ParagraphRole::title;
  };
  if (locked(p) || locked(q)) return false;
  const Line& end = p.lines.back();
  const Line& start = q.lines.front();
  const bool new_frame = end.page != start.page || effective_column(end) != effective_column(start) ||
                         end.span_all != start.span_all;
  if (!new_frame) return false;
  if (text::ends_with_terminal_punctuation(p.text)) return false;
  const bool continues = text::starts_with_lowercase(q.text) || (!p.text.empty() && p.text.back() == '-');
  if (!continues) return false;
  if (consider_font_size && std::abs(p.dominant_font_size - q.dominant_font_size) > tol) return false;
  return true;
}

}  // namespace

void concat_pages(Document& doc, bool consider_font_size, const Thresholds& th) {
  doc.require_stage("concat_pages", "extract_paragraphs");
  std::vector<Paragraph> out;
  for (auto& q : doc.paragraphs) {
    if (!out.empty() && can_merge(out.back(), q, consider_font_size, th.size_tol_pt)) {
      Paragraph& p = out.back();
      const ParagraphRole role = p.role;
      std::vector<Line> lines = std::move(p.lines);
      lines.insert(lines.end(), std::make_move_iterator(q.lines.begin()), std::make_move_iterator(q.lines.end()));
      p = Paragraph::from_lines(std::move(lines));
      p.role = role;
    } else {
      out.push_back(std::move(q));
    }
  }
  doc.paragraphs = std::move(out);
  doc.mark_stage("concat_pages");
}

}  // namespace paperjson
