#pragma once

#include <vector>

#include "core/model.hpp"

namespace paperjson {

// Numeric knobs of the layout steps. All are overridable from the command
// line.
struct Thresholds {
  double line_overlap = 0.5;     // min vertical overlap (of the shorter box) to share a line
  double para_gap_factor = 1.5;  // paragraph break when pitch exceeds this times the median
  double indent_pt = 8.0;        // first-line indent that starts a new paragraph
  double size_tol_pt = 0.5;      // font sizes closer than this count as equal
};

// Groups tokens of one page into lines. With a layout, rows are built per
// column and then re-joined across a boundary only when the horizontal gap
// there is at most one em (a heading or title running across the gutter).
std::vector<Line> build_lines(const std::vector<Token>& tokens, double min_overlap,
                              const ColumnLayout* layout = nullptr);

ColumnLayout detect_columns(const PageData& page);

// Sorts by (page, column, y0, x0); unassigned columns count as 0.
void sort_reading_order(std::vector<Line>& lines);

void extract_lines(Document& doc, const Thresholds& th = {});
void concat_columns(Document& doc);

// Median positive pitch (difference of top edges) between consecutive lines
// of the same page and column. Zero when there is no such pair.
double median_line_pitch(const std::vector<Line>& lines);

// Splits an ordered line stream into paragraphs with the extract_paragraphs
// rules. `median_pitch` <= 0 makes the gap rule fall back to 1.2 em.
std::vector<Paragraph> group_paragraphs(const std::vector<Line>& lines, bool consider_font_size,
                                        const Thresholds& th, double median_pitch);

void extract_paragraphs(Document& doc, bool consider_font_size, const Thresholds& th = {});
void concat_pages(Document& doc, bool consider_font_size, const Thresholds& th = {});

}  // namespace paperjson
