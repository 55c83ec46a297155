#include "objects/objects.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <tuple>

#include "core/error.hpp"
#include "core/text.hpp"
#include "detect/detect.hpp"

namespace paperjson {

namespace {

constexpr double kMembership = 0.5;
constexpr double kDirectionSlack = 2.0;

bool is_member(const Line& line, const DetectedObject& obj) {
  return line.page == obj.page && overlap_ratio(line.bbox, obj.bbox) >= kMembership;
}

// Pulls every line matching `take` out of doc.lines and out of paragraphs
// (paragraphs that shrink are rebuilt, emptied ones dropped).
template <typename Pred>
std::vector<Line> take_lines(Document& doc, Pred take) {
  std::vector<Line> taken;
  std::vector<Line> kept;
  for (auto& l : doc.lines) (take(l) ? taken : kept).push_back(std::move(l));
  doc.lines = std::move(kept);

  std::vector<Paragraph> paras;
  for (auto& p : doc.paragraphs) {
    std::vector<Line> rest;
    for (auto& l : p.lines) (take(l) ? taken : rest).push_back(std::move(l));
    if (rest.size() == p.lines.size()) {
      p.lines = std::move(rest);
      paras.push_back(std::move(p));
    } else if (!rest.empty()) {
      const ParagraphRole role = p.role;
      Paragraph rebuilt = Paragraph::from_lines(std::move(rest));
      rebuilt.role = role;
      paras.push_back(std::move(rebuilt));
    }
  }
  doc.paragraphs = std::move(paras);
  sort_reading_order(taken);
  return taken;
}

void detach(Document& doc, const std::vector<Line>& lines) {
  std::set<std::size_t> ids;
  for (const auto& l : lines) {
    for (const auto& t : l.tokens) ids.insert(t.id);
  }
  detach_tokens(doc, ids);
}

std::string text_of(const std::vector<Line>& lines) {
  std::vector<std::string> parts;
  for (const auto& l : lines) parts.push_back(l.text());
  return text::join_lines(parts);
}

int column_for(const Document& doc, const BBox& box, std::size_t page) {
  const ColumnLayout* layout = doc.layout_for(page);
  return layout ? layout->column_of(box.center_x()) : 0;
}

bool is_footnote_marker_start(const std::string& s) {
  static const std::regex marker(R"(^(\d{1,2}|[*†‡§])(\s|$))");
  return std::regex_search(s, marker);
}

}  // namespace

const char* to_string(CaptionPosition pos) {
  switch (pos) {
    case CaptionPosition::above: return "above";
    case CaptionPosition::below: return "below";
    case CaptionPosition::left: return "left";
    case CaptionPosition::right: return "right";
  }
  return "?";
}

std::optional<CaptionPosition> parse_caption_position(std::string_view s) {
  for (auto p : {CaptionPosition::above, CaptionPosition::below, CaptionPosition::left, CaptionPosition::right}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

bool in_preset_direction(const BBox& c, const BBox& o, CaptionPosition pos) {
  const bool x_overlap = c.x0() < o.x1() && c.x1() > o.x0();
  const bool y_overlap = c.y0() < o.y1() && c.y1() > o.y0();
  switch (pos) {
    case CaptionPosition::below: return x_overlap && c.y0() >= o.y1() - kDirectionSlack;
    case CaptionPosition::above: return x_overlap && c.y1() <= o.y0() + kDirectionSlack;
    case CaptionPosition::left: return y_overlap && c.x1() <= o.x0() + kDirectionSlack;
    case CaptionPosition::right: return y_overlap && c.x0() >= o.x1() - kDirectionSlack;
  }
  return false;
}

void extract_captions(Document& doc, const CaptionPreset& figure_preset, const CaptionPreset& table_preset) {
  doc.require_stage("extract_captions_with_ml", "load_objects_with_ml");
  doc.require_stage("extract_captions_with_ml", "extract_lines");

  std::vector<std::size_t> caption_idx, target_idx;
  for (std::size_t i = 0; i < doc.objects.size(); ++i) {
    const auto& o = doc.objects[i];
    if (o.label == ObjectLabel::caption) {
      const bool done = std::any_of(doc.captions.begin(), doc.captions.end(),
                                    [&](const CaptionRecord& r) { return r.caption == o; });
      if (!done) caption_idx.push_back(i);
    } else if (o.label == ObjectLabel::figure || o.label == ObjectLabel::table) {
      target_idx.push_back(i);
    }
  }
  if (caption_idx.empty()) {
    doc.mark_stage("extract_captions_with_ml");
    return;
  }

  // Caption text first: each line goes to the first caption it belongs to.
  std::vector<std::vector<Line>> caption_lines(caption_idx.size());
  std::vector<Line> pulled = take_lines(doc, [&](const Line& l) {
    return std::any_of(caption_idx.begin(), caption_idx.end(),
                       [&](std::size_t i) { return is_member(l, doc.objects[i]); });
  });
  detach(doc, pulled);
  for (auto& l : pulled) {
    for (std::size_t k = 0; k < caption_idx.size(); ++k) {
      if (is_member(l, doc.objects[caption_idx[k]])) {
        caption_lines[k].push_back(std::move(l));
        break;
      }
    }
  }

  std::vector<CaptionRecord> records;
  std::vector<std::optional<ObjectLabel>> kinds;
  for (std::size_t k = 0; k < caption_idx.size(); ++k) {
    const DetectedObject& cap = doc.objects[caption_idx[k]];
    CaptionRecord r{cap, std::nullopt, ObjectLabel::figure, {}, 0, {}};
    r.text = text_of(caption_lines[k]);
    r.lines = std::move(caption_lines[k]);
    r.column = column_for(doc, cap.bbox, cap.page);
    const auto kind = caption_kind(r.text);
    r.kind = kind.value_or(ObjectLabel::figure);
    kinds.push_back(kind);
    records.push_back(std::move(r));
  }

  // Greedy matching by ascending edge distance, one-to-one.
  struct Candidate {
    double distance;
    std::size_t caption;
    std::size_t target;
  };
  std::vector<Candidate> cands;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const DetectedObject& cap = records[k].caption;
    for (std::size_t t = 0; t < target_idx.size(); ++t) {
      const DetectedObject& obj = doc.objects[target_idx[t]];
      if (obj.page != cap.page) continue;
      if (kinds[k] && *kinds[k] != obj.label) continue;
      const CaptionPreset& preset = obj.label == ObjectLabel::table ? table_preset : figure_preset;
      if (!in_preset_direction(cap.bbox, obj.bbox, preset.position)) continue;
      const double d = edge_distance(cap.bbox, obj.bbox);
      if (d > kMaxCaptionDistance) continue;
      cands.push_back(Candidate{d, k, t});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.distance, a.caption, a.target) < std::tie(b.distance, b.caption, b.target);
  });
  std::vector<bool> cap_used(records.size(), false), target_used(target_idx.size(), false);
  for (const auto& c : cands) {
    if (cap_used[c.caption] || target_used[c.target]) continue;
    cap_used[c.caption] = target_used[c.target] = true;
    records[c.caption].target = doc.objects[target_idx[c.target]];
    records[c.caption].kind = records[c.caption].target->label;
  }
  for (auto& r : records) {
    if (!r.target) {
      doc.warnings.push_back("caption on page " + std::to_string(r.caption.page) + " has no matching " +
                             std::string(to_string(r.kind)) + ": \"" + r.text + "\"");
    }
    doc.captions.push_back(std::move(r));
  }
  std::stable_sort(doc.captions.begin(), doc.captions.end(), [](const CaptionRecord& a, const CaptionRecord& b) {
    return reading_order_key(a.caption.bbox, a.caption.page, a.column) <
           reading_order_key(b.caption.bbox, b.caption.page, b.column);
  });
  doc.mark_stage("extract_captions_with_ml");
}

const char* removal_step_name(ObjectLabel label) {
  switch (label) {
    case ObjectLabel::figure: return "remove_figures_with_ml";
    case ObjectLabel::table: return "remove_tables_with_ml";
    case ObjectLabel::equation: return "remove_equations_with_ml";
    default: break;
  }
  throw Error(ErrorCode::invalid_argument, std::string("no removal step for label ") + to_string(label));
}

std::size_t remove_object_tokens(Document& doc, ObjectLabel label) {
  const char* step = removal_step_name(label);
  doc.require_stage(step, "load_objects_with_ml");
  std::vector<const DetectedObject*> objs;
  for (const auto& o : doc.objects) {
    if (o.label == label) objs.push_back(&o);
  }
  const std::size_t n = objs.empty() ? 0 : remove_tokens(doc, [&](const Token& t) {
    return std::any_of(objs.begin(), objs.end(), [&](const DetectedObject* o) {
      return o->page == t.page && overlap_ratio(t.bbox, o->bbox) >= kMembership;
    });
  }, step);
  doc.mark_stage(step);
  return n;
}

void extract_footnotes(Document& doc, const Thresholds& th) {
  doc.require_stage("extract_footnotes_with_ml", "load_objects_with_ml");
  doc.require_stage("extract_footnotes_with_ml", "extract_lines");
  std::vector<const DetectedObject*> regions;
  for (const auto& o : doc.objects) {
    if (o.label == ObjectLabel::footnote) regions.push_back(&o);
  }
  if (!regions.empty()) {
    std::vector<Line> pulled = take_lines(doc, [&](const Line& l) {
      return std::any_of(regions.begin(), regions.end(), [&](const DetectedObject* o) { return is_member(l, *o); });
    });
    detach(doc, pulled);
    // Split on marker-led lines first, then apply the ordinary paragraph rules.
    std::vector<std::vector<Line>> groups;
    for (auto& l : pulled) {
      const bool fresh = groups.empty() || is_footnote_marker_start(l.text()) ||
                         groups.back().back().page != l.page;
      if (fresh) groups.emplace_back();
      groups.back().push_back(std::move(l));
    }
    for (auto& g : groups) {
      const double median = median_line_pitch(g);
      for (auto& p : group_paragraphs(g, false, th, median)) doc.footnotes.push_back(std::move(p));
    }
    std::stable_sort(doc.footnotes.begin(), doc.footnotes.end(), [](const Paragraph& a, const Paragraph& b) {
      const Line& la = a.lines.front();
      const Line& lb = b.lines.front();
      return reading_order_key(la.bbox, la.page, la.column) < reading_order_key(lb.bbox, lb.page, lb.column);
    });
  }
  doc.mark_stage("extract_footnotes_with_ml");
}

}  // namespace paperjson
