#include "detect/detect.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "assemble/assemble.hpp"
#include "core/error.hpp"
#include "core/text.hpp"

namespace paperjson {

namespace {

constexpr double kTokenInObject = 0.5;
constexpr double kRuleLinkDistance = 3.0;
constexpr double kRuleThickness = 2.0;
constexpr double kEquationCenterTol = 0.10;
constexpr double kEquationMathFraction = 0.40;
constexpr double kEquationIsolation = 0.8;
constexpr double kFootnoteRegion = 0.80;  // top of the bottom 20%
constexpr double kMarginBand = 0.05;
constexpr double kFootnoteRuleMaxWidth = 0.40;
constexpr double kCaptionGapFactor = 0.5;

bool is_math_symbol(char32_t c) {
  switch (c) {
    case U'=': case U'+': case U'−': case U'∑': case U'∫':
    case U'≤': case U'≥': case U'×': case U'÷':
      return true;
    default:
      return text::is_greek(c);
  }
}

double math_fraction(const std::string& s) {
  std::size_t math = 0, total = 0;
  for (char32_t c : text::decode_utf8(s)) {
    if (text::is_whitespace(c)) continue;
    ++total;
    if (is_math_symbol(c)) ++math;
  }
  return total == 0 ? 0.0 : static_cast<double>(math) / static_cast<double>(total);
}

struct Rule {
  BBox box;
  bool horizontal;
};

std::vector<Rule> collect_rules(const PageData& page) {
  std::vector<Rule> rules;
  for (const auto& d : page.drawn) {
    const bool thin = d.bbox.height() <= kRuleThickness || d.bbox.width() <= kRuleThickness;
    if (d.kind == DrawnKind::line || (d.kind == DrawnKind::rectangle && thin)) {
      rules.push_back(Rule{d.bbox, d.bbox.width() >= d.bbox.height()});
    }
  }
  return rules;
}

// Clusters rules that come within the link distance; returns the member
// indices of each cluster.
std::vector<std::vector<std::size_t>> cluster_rules(const std::vector<Rule>& rules) {
  std::vector<std::size_t> parent(rules.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      if (edge_distance(rules[i].box, rules[j].box) <= kRuleLinkDistance) parent[find(j)] = find(i);
    }
  }
  std::vector<std::vector<std::size_t>> groups(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) groups[find(i)].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

bool overlaps_any(const BBox& box, const std::vector<DetectedObject>& objects) {
  return std::any_of(objects.begin(), objects.end(),
                     [&](const DetectedObject& o) { return overlap_ratio(box, o.bbox) >= kTokenInObject; });
}

std::vector<DetectedObject> detect_figures(const PageData& page) {
  std::vector<DetectedObject> out;
  for (const auto& d : page.drawn) {
    if (d.kind != DrawnKind::image) continue;
    BBox region = d.bbox;
    for (const auto& t : page.tokens) {
      if (overlap_ratio(t.bbox, d.bbox) >= kTokenInObject) region = region.united(t.bbox);
    }
    out.push_back(DetectedObject{ObjectLabel::figure, region, page.index, 1.0});
  }
  return out;
}

std::vector<DetectedObject> detect_tables(const PageData& page, const std::vector<Rule>& rules,
                                          std::vector<bool>& in_table) {
  std::vector<DetectedObject> out;
  in_table.assign(rules.size(), false);
  for (const auto& group : cluster_rules(rules)) {
    std::size_t h = 0, v = 0;
    for (auto i : group) (rules[i].horizontal ? h : v)++;
    if (!((h >= 2 && v >= 2) || h >= 3 || v >= 3)) continue;
    BBox box = rules[group.front()].box;
    for (auto i : group) box = box.united(rules[i].box);
    if (box.is_flat()) continue;
    for (auto i : group) in_table[i] = true;
    out.push_back(DetectedObject{ObjectLabel::table, box, page.index, 1.0});
  }
  return out;
}

std::vector<DetectedObject> detect_captions(const PageData& page, const std::vector<Line>& lines) {
  std::vector<DetectedObject> out;
  std::vector<bool> used(lines.size(), false);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (used[i] || !caption_kind(lines[i].text())) continue;
    BBox box = lines[i].bbox;
    used[i] = true;
    const Line* last = &lines[i];
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line& next = lines[j];
      if (used[j] || next.page != last->page) continue;
      if (next.bbox.x1() < box.x0() || next.bbox.x0() > box.x1()) continue;  // other column
      if (next.bbox.y0() < last->bbox.y1() - 0.5 * last->bbox.height()) continue;
      const double gap = next.bbox.y0() - last->bbox.y1();
      if (gap > kCaptionGapFactor * last->bbox.height()) break;
      if (std::abs(next.dominant_font_size - last->dominant_font_size) > 0.5) break;
      if (caption_kind(next.text())) break;
      box = box.united(next.bbox);
      used[j] = true;
      last = &next;
    }
    out.push_back(DetectedObject{ObjectLabel::caption, box, page.index, 1.0});
  }
  return out;
}

// Horizontal extent of the text column a line belongs to.
std::pair<double, double> column_extent(const Line& line, const std::vector<Line>& lines,
                                        const ColumnLayout& layout) {
  const int col = layout.column_of(line.bbox.center_x());
  double lo = line.bbox.x0(), hi = line.bbox.x1();
  for (const auto& l : lines) {
    if (layout.column_of(l.bbox.center_x()) != col) continue;
    bool crosses = false;
    for (double b : layout.boundaries) crosses = crosses || (l.bbox.x0() < b && l.bbox.x1() > b);
    if (crosses) continue;
    lo = std::min(lo, l.bbox.x0());
    hi = std::max(hi, l.bbox.x1());
  }
  return {lo, hi};
}

std::vector<DetectedObject> detect_equations(const PageData& page, const std::vector<Line>& lines,
                                             const ColumnLayout& layout) {
  std::vector<DetectedObject> out;
  for (const auto& line : lines) {
    if (math_fraction(line.text()) < kEquationMathFraction) continue;
    const auto [lo, hi] = column_extent(line, lines, layout);
    const double width = hi - lo;
    if (width <= 0.0) continue;
    if (std::abs(line.bbox.center_x() - 0.5 * (lo + hi)) > kEquationCenterTol * width) continue;
    const double need = kEquationIsolation * line.bbox.height();
    bool isolated = true;
    for (const auto& other : lines) {
      if (&other == &line) continue;
      if (other.bbox.x1() <= lo || other.bbox.x0() >= hi) continue;  // different column
      double gap;
      if (other.bbox.y1() <= line.bbox.y0()) {
        gap = line.bbox.y0() - other.bbox.y1();
      } else if (other.bbox.y0() >= line.bbox.y1()) {
        gap = other.bbox.y0() - line.bbox.y1();
      } else {
        gap = 0.0;
      }
      if (gap < need) {
        isolated = false;
        break;
      }
    }
    if (isolated) out.push_back(DetectedObject{ObjectLabel::equation, line.bbox, page.index, 1.0});
  }
  return out;
}

std::vector<DetectedObject> detect_footnotes(const PageData& page, const std::vector<Line>& lines,
                                             const std::vector<Rule>& rules, const std::vector<bool>& in_table,
                                             const std::vector<DetectedObject>& taken, double body_size) {
  const double region_top = kFootnoteRegion * page.height;
  const double band_bottom = (1.0 - kMarginBand) * page.height;
  std::vector<const Rule*> short_rules;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!in_table[i] && rules[i].horizontal && rules[i].box.width() <= kFootnoteRuleMaxWidth * page.width &&
        rules[i].box.y0() >= region_top - 2.0 * body_size) {
      short_rules.push_back(&rules[i]);
    }
  }

  std::vector<const Line*> candidates;
  for (const auto& l : lines) {
    if (l.bbox.y0() < region_top || l.bbox.center_y() >= band_bottom) continue;
    if (overlaps_any(l.bbox, taken)) continue;
    candidates.push_back(&l);
  }
  std::sort(candidates.begin(), candidates.end(), [](const Line* a, const Line* b) {
    return reading_order_key(a->bbox, a->page, 0) < reading_order_key(b->bbox, b->page, 0);
  });

  std::vector<const Line*> chosen;
  for (const Line* l : candidates) {
    bool ok = l->dominant_font_size <= body_size - 1.0;
    if (!ok) {
      for (const Rule* r : short_rules) {
        if (r->box.y1() > l->bbox.y0()) continue;
        const bool overlaps_x = r->box.x0() < l->bbox.x1() && r->box.x1() > l->bbox.x0();
        if (!overlaps_x) continue;
        // The line sits right below the rule, or below a footnote line that does.
        double anchor = r->box.y1();
        for (const Line* c : chosen) {
          if (c->bbox.y0() >= r->box.y1() && c->bbox.y1() <= l->bbox.y0()) anchor = std::max(anchor, c->bbox.y1());
        }
        if (l->bbox.y0() - anchor <= 2.0 * l->bbox.height()) ok = true;
      }
    }
    if (ok) chosen.push_back(l);
  }

  // Group chosen lines into blocks by vertical proximity and horizontal overlap.
  std::vector<BBox> blocks;
  std::vector<double> heights;
  for (const Line* l : chosen) {
    bool joined = false;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const bool x_overlap = blocks[b].x0() < l->bbox.x1() && blocks[b].x1() > l->bbox.x0();
      const double gap = l->bbox.y0() - blocks[b].y1();
      if (x_overlap && gap <= std::max(heights[b], l->bbox.height())) {
        blocks[b] = blocks[b].united(l->bbox);
        joined = true;
        break;
      }
    }
    if (!joined) {
      blocks.push_back(l->bbox);
      heights.push_back(l->bbox.height());
    }
  }
  std::vector<DetectedObject> out;
  for (const auto& b : blocks) out.push_back(DetectedObject{ObjectLabel::footnote, b, page.index, 1.0});
  return out;
}

void sort_objects(std::vector<DetectedObject>& objs) {
  std::stable_sort(objs.begin(), objs.end(), [](const DetectedObject& a, const DetectedObject& b) {
    if (a.page != b.page) return a.page < b.page;
    if (a.bbox.y0() != b.bbox.y0()) return a.bbox.y0() < b.bbox.y0();
    return a.bbox.x0() < b.bbox.x0();
  });
}

}  // namespace

std::optional<ObjectLabel> caption_kind(std::string_view line_text) {
  static const std::regex re(R"(^(Figure|Fig\.|Table)\s+\d+[:.]?(\s|$))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(line_text.begin(), line_text.end(), m, re)) return std::nullopt;
  return m[1].str() == "Table" ? ObjectLabel::table : ObjectLabel::figure;
}

std::vector<DetectedObject> detect_objects_heuristic(const PageData& page, const HeuristicContext& ctx) {
  const double body = ctx.body_size > 0.0 ? ctx.body_size : dominant_font_size(page.tokens);
  const ColumnLayout layout = detect_columns(page);
  const std::vector<Line> lines = build_lines(page.tokens, 0.5, &layout);
  const std::vector<Rule> rules = collect_rules(page);

  std::vector<DetectedObject> out = detect_figures(page);
  std::vector<bool> in_table;
  auto tables = detect_tables(page, rules, in_table);
  out.insert(out.end(), tables.begin(), tables.end());
  auto captions = detect_captions(page, lines);
  out.insert(out.end(), captions.begin(), captions.end());
  auto equations = detect_equations(page, lines, layout);
  out.insert(out.end(), equations.begin(), equations.end());
  auto footnotes = detect_footnotes(page, lines, rules, in_table, out, body);
  out.insert(out.end(), footnotes.begin(), footnotes.end());
  sort_objects(out);
  return out;
}

std::vector<DetectedObject> parse_annotations(std::string_view body, const std::vector<PageData>& pages,
                                              std::vector<std::string>* warnings) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(body.begin(), body.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::annotation_file, std::string("annotation file is not valid JSON: ") + e.what());
  }
  auto bad = [](const std::string& what) { return Error(ErrorCode::annotation_file, "annotation file: " + what); };
  if (!root.is_object() || !root.contains("pages") || !root["pages"].is_array()) {
    throw bad("top level must be an object with a \"pages\" array");
  }
  std::vector<DetectedObject> out;
  for (const auto& entry : root["pages"]) {
    if (!entry.is_object() || !entry.contains("page") || !entry["page"].is_number_integer()) {
      throw bad("each page entry needs an integer \"page\"");
    }
    const auto index = entry["page"].get<long long>();
    if (index < 0 || static_cast<std::size_t>(index) >= pages.size()) {
      throw Error(ErrorCode::unknown_page, "annotation references page " + std::to_string(index) +
                                               " but the document has " + std::to_string(pages.size()));
    }
    const PageData& page = pages[static_cast<std::size_t>(index)];
    if (!entry.contains("objects")) continue;
    if (!entry["objects"].is_array()) throw bad("\"objects\" must be an array");
    for (const auto& obj : entry["objects"]) {
      if (!obj.is_object() || !obj.contains("label") || !obj["label"].is_string()) {
        throw bad("each object needs a string \"label\"");
      }
      const std::string name = obj["label"].get<std::string>();
      const auto label = parse_object_label(name);
      if (!label) throw Error(ErrorCode::unknown_label, "unknown object label \"" + name + "\"");
      if (!obj.contains("bbox") || !obj["bbox"].is_array() || obj["bbox"].size() != 4) {
        throw bad("each object needs a four-number \"bbox\"");
      }
      double c[4];
      for (int k = 0; k < 4; ++k) {
        if (!obj["bbox"][k].is_number()) throw bad("bbox entries must be numbers");
        c[k] = obj["bbox"][k].get<double>();
        if (!std::isfinite(c[k])) throw bad("bbox entries must be finite");
      }
      if (!(c[0] < c[2]) || !(c[1] < c[3])) throw bad("bbox must satisfy x0 < x1 and y0 < y1");
      double score = 1.0;
      if (obj.contains("score")) {
        if (!obj["score"].is_number()) throw bad("score must be a number");
        score = obj["score"].get<double>();
        if (!(score >= 0.0 && score <= 1.0)) throw bad("score must lie in [0, 1]");
      }
      const double x0 = std::clamp(c[0], 0.0, page.width), x1 = std::clamp(c[2], 0.0, page.width);
      const double y0 = std::clamp(c[1], 0.0, page.height), y1 = std::clamp(c[3], 0.0, page.height);
      auto box = BBox::try_make(x0, y0, x1, y1);
      if (!box) {
        if (warnings) warnings->push_back("annotation " + name + " on page " + std::to_string(index) +
                                          " lies outside the page; dropped");
        continue;
      }
      out.push_back(DetectedObject{*label, *box, page.index, score});
    }
  }
  return out;
}

void load_objects(Document& doc, const DetectionSource& source) {
  doc.require_stage("load_objects_with_ml", "load_docs");
  std::vector<DetectedObject> objects;
  if (source.backend == DetectorBackend::external) {
    if (!source.annotation_path) {
      throw Error(ErrorCode::annotation_file, "external detector needs an annotation file");
    }
    std::filesystem::path path = *source.annotation_path;
    if (std::filesystem::is_directory(path)) {
      path /= std::filesystem::path(doc.source_path).stem().string() + ".json";
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::annotation_file, "cannot read annotation file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    objects = parse_annotations(ss.str(), doc.pages, &doc.warnings);
  } else {
    std::vector<Token> all;
    for (const auto& p : doc.pages) all.insert(all.end(), p.tokens.begin(), p.tokens.end());
    const HeuristicContext ctx{dominant_font_size(all)};
    for (const auto& page : doc.pages) {
      auto found = detect_objects_heuristic(page, ctx);
      objects.insert(objects.end(), found.begin(), found.end());
    }
  }
  sort_objects(objects);
  doc.objects = std::move(objects);
  doc.mark_stage("load_objects_with_ml");
}

}  // namespace paperjson
