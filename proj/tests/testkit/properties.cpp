#include "testkit/properties.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "assemble/assemble.hpp"
#include "cleanup/cleanup.hpp"
#include "core/error.hpp"
#include "objects/objects.hpp"
#include "testkit/fixtures.hpp"

namespace testkit {

using namespace paperjson;

namespace {

constexpr double kPageW = 612.0;
constexpr double kPageH = 792.0;

int between(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string random_word(std::mt19937_64& rng) {
  static const char* const pool[] = {"the",   "model", "data",  "we",     "results", "show",  "of",
                                     "a",     "layer", "paper", "method", "in",      "table", "train",
                                     "error", "is",    "with",  "large",  "set",     "value", "loss."};
  return pool[between(rng, 0, static_cast<int>(std::size(pool)) - 1)];
}

class DocBuilder {
 public:
  DocBuilder(std::mt19937_64& rng, const DocSpec& spec) : rng_(rng), spec_(spec) {}

  Document build() {
    std::vector<PageData> pages;
    for (std::size_t p = 0; p < spec_.pages; ++p) {
      page_ = p;
      tokens_.clear();
      if (spec_.headers) add_run({"Proceedings", "of", "the", "Workshop"}, 200.0, 20.0, 8.0);
      if (spec_.page_numbers) add_run({std::to_string(p + 1)}, 302.0, 765.0, 8.0);
      if (spec_.two_column) {
        if (p == 0 && chance(rng_, 0.5)) add_run({"A", "Title", "Across", "Both", "Columns"}, 180.0, 50.0, 16.0);
        fill_column(54.0, 290.0);
        fill_column(322.0, 558.0);
      } else {
        fill_column(72.0, 540.0);
      }
      for (int i = 0; i < spec_.control_tokens; ++i) {
        const double x = uniform(rng_, 60.0, 500.0);
        const double y = uniform(rng_, 60.0, 700.0);
        push_token(chance(rng_, 0.5) ? std::string{'\x01', '\x07'} : std::string("\xEF\xBF\xBD"), x, y, x + 8.0,
                   y + 10.0, 10.0);
      }
      if (spec_.objects_per_page > 0) {
        for (int i = 0; i < between(rng_, 0, spec_.objects_per_page); ++i) random_object();
      }
      pages.push_back(page(p, std::move(tokens_), kPageW, kPageH));
    }
    Document doc = document(std::move(pages));
    if (spec_.objects_per_page > 0) {
      doc.objects = std::move(objects_);
      doc.mark_stage("load_objects_with_ml");
    }
    return doc;
  }

 private:
  void push_token(std::string text, double x0, double y0, double x1, double y1, double size) {
    tokens_.push_back(tok(next_id_++, std::move(text), x0, y0, x1, y1, size, page_));
  }

  // Words laid left to right from x; returns the right edge.
  double add_run(const std::vector<std::string>& ws, double x, double y0, double size) {
    double right = x;
    for (const auto& w : ws) {
      const double width = 0.5 * size * static_cast<double>(w.size());
      push_token(w, x, y0, x + width, y0 + size, size);
      right = x + width;
      x += width + 0.3 * size;
    }
    return right;
  }

  void add_object(ObjectLabel label, double x0, double y0, double x1, double y1) {
    objects_.push_back(DetectedObject{label, BBox(x0, y0, std::min(x1, kPageW), std::min(y1, kPageH)), page_, 1.0});
  }

  void body_row(double left, double right, double y, double size) {
    std::vector<std::string> ws;
    double width = 0.0;
    const double limit = (right - left) * uniform(rng_, 0.5, 1.0);
    while (true) {
      std::string w = random_word(rng_);
      const double add = 0.5 * size * static_cast<double>(w.size()) + 0.3 * size;
      if (!ws.empty() && width + add > limit) break;
      width += add;
      ws.push_back(std::move(w));
    }
    const double indent = chance(rng_, 0.15) ? 12.0 : 0.0;
    add_run(ws, left + indent, y, size);
  }

  void fill_column(double left, double right) {
    double y = 80.0;
    const double bottom = 700.0;
    const bool floats = spec_.objects_per_page > 0;
    while (y < bottom) {
      const double size = chance(rng_, 0.1) ? (chance(rng_, 0.5) ? 9.0 : 12.0) : 10.0;
      const double roll = uniform(rng_, 0.0, 1.0);
      if (floats && roll < 0.08 && y + 140.0 < bottom) {
        y = place_float(left, right, y);
        continue;
      }
      if (floats && roll < 0.11) {
        const std::vector<std::string> eq = {"x", "=", "y", "+", "1"};
        const double x = 0.5 * (left + right) - 15.0;
        const double r = add_run(eq, x, y + 6.0, size);
        add_object(ObjectLabel::equation, x - 2.0, y + 4.0, r + 2.0, y + size + 8.0);
        y += size + 16.0;
        continue;
      }
      body_row(left, right, y, size);
      y += size * 1.2 + (chance(rng_, 0.15) ? size : 0.0);
    }
    if (floats && chance(rng_, 0.3)) {
      const double r = add_run({"1", "a", "footnote", "remark"}, left, 712.0, 8.0);
      add_object(ObjectLabel::footnote, left - 1.0, 711.0, r + 1.0, 721.0);
    }
  }

  double place_float(double left, double right, double y) {
    const ObjectLabel kind = chance(rng_, 0.5) ? ObjectLabel::figure : ObjectLabel::table;
    const double h = uniform(rng_, 30.0, 90.0);
    const bool above = chance(rng_, 0.4);
    const int prefix = between(rng_, 0, 3);
    std::vector<std::string> cap;
    if (prefix == 1) cap = {"Figure", std::to_string(between(rng_, 1, 9)) + ":"};
    if (prefix == 2) cap = {"Table", std::to_string(between(rng_, 1, 9)) + "."};
    for (int i = between(rng_, 1, 4); i > 0; --i) cap.push_back(random_word(rng_));
    auto caption = [&](double cy) {
      const double r = add_run(cap, left, cy, 9.0);
      add_object(ObjectLabel::caption, left - 1.0, cy - 1.0, r + 1.0, cy + 10.0);
      return cy + 14.0;
    };
    auto body = [&](double oy) {
      if (kind == ObjectLabel::table) {
        for (double ry = oy + 4.0; ry + 9.0 < oy + h; ry += 12.0) add_run({"0.1", "0.2", "0.3"}, left + 10.0, ry, 8.0);
      } else if (chance(rng_, 0.5)) {
        add_run({"axis"}, left + 10.0, oy + h - 12.0, 7.0);
      }
      add_object(kind, left, oy, right, oy + h);
      return oy + h + uniform(rng_, 1.0, 20.0);
    };
    if (above) {
      y = caption(y);
      y = body(y + uniform(rng_, 0.0, 10.0));
    } else {
      y = body(y);
      y = caption(y);
    }
    return y + 6.0;
  }

  void random_object() {
    static const ObjectLabel labels[] = {ObjectLabel::figure, ObjectLabel::table, ObjectLabel::equation,
                                         ObjectLabel::caption, ObjectLabel::footnote};
    const double x0 = uniform(rng_, 20.0, 450.0);
    const double y0 = uniform(rng_, 40.0, 650.0);
    add_object(labels[between(rng_, 0, 4)], x0, y0, x0 + uniform(rng_, 20.0, 250.0), y0 + uniform(rng_, 8.0, 120.0));
  }

  std::mt19937_64& rng_;
  DocSpec spec_;
  std::size_t page_ = 0;
  std::size_t next_id_ = 0;
  std::vector<Token> tokens_;
  std::vector<DetectedObject> objects_;
};

// ---- snapshots -------------------------------------------------------------

using Ids = std::vector<std::size_t>;

Ids ids_of(const std::vector<Token>& ts) {
  Ids out;
  for (const auto& t : ts) out.push_back(t.id);
  return out;
}

Ids ids_of(const std::vector<Line>& lines) {
  Ids out;
  for (const auto& l : lines) {
    for (const auto& t : l.tokens) out.push_back(t.id);
  }
  return out;
}

Ids page_ids(const Document& doc) {
  Ids out;
  for (const auto& p : doc.pages) {
    const Ids ids = ids_of(p.tokens);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

Ids layout_ids(const Document& doc) {
  Ids out = ids_of(doc.lines);
  for (const auto& p : doc.paragraphs) {
    const Ids ids = ids_of(p.lines);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

// Every token the document accounts for: on a page, inside a caption or
// footnote, or in the removal log.
std::map<std::size_t, std::string> accounted(const Document& doc, std::string& dup) {
  std::map<std::size_t, std::string> out;
  auto add = [&](const Token& t, const char* where) {
    if (!out.emplace(t.id, t.text).second && dup.empty()) dup = "token " + std::to_string(t.id) + " duplicated (" + where + ")";
  };
  for (const auto& p : doc.pages) {
    for (const auto& t : p.tokens) add(t, "page");
  }
  for (const auto& c : doc.captions) {
    for (const auto& l : c.lines) {
      for (const auto& t : l.tokens) add(t, "caption");
    }
  }
  for (const auto& f : doc.footnotes) {
    for (const auto& l : f.lines) {
      for (const auto& t : l.tokens) add(t, "footnote");
    }
  }
  for (const auto& r : doc.removed) add(r.token, "removed");
  return out;
}

struct Snapshot {
  std::vector<Ids> pages;
  Ids removed;
  std::vector<Ids> lines;
  std::vector<Ids> paragraphs;
  std::size_t captions = 0;
  std::size_t footnotes = 0;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

Snapshot snapshot(const Document& doc) {
  Snapshot s;
  for (const auto& p : doc.pages) s.pages.push_back(ids_of(p.tokens));
  for (const auto& r : doc.removed) s.removed.push_back(r.token.id);
  for (const auto& l : doc.lines) s.lines.push_back(ids_of(std::vector<Line>{l}));
  for (const auto& p : doc.paragraphs) s.paragraphs.push_back(ids_of(p.lines));
  s.captions = doc.captions.size();
  s.footnotes = doc.footnotes.size();
  return s;
}

bool is_subsequence(const Ids& sub, const Ids& full) {
  std::size_t j = 0;
  for (std::size_t id : full) {
    if (j < sub.size() && sub[j] == id) ++j;
  }
  return j == sub.size();
}

Ids sorted(Ids v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Line bbox equals the exact min/max over its tokens.
bool line_box_exact(const Line& l) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& t : l.tokens) {
    x0 = std::min(x0, t.bbox.x0());
    y0 = std::min(y0, t.bbox.y0());
    x1 = std::max(x1, t.bbox.x1());
    y1 = std::max(y1, t.bbox.y1());
  }
  return l.bbox.x0() == x0 && l.bbox.y0() == y0 && l.bbox.x1() == x1 && l.bbox.y1() == y1;
}

// Runs `body` on `instances` cases; body returns "" on success.
PropertyOutcome run(const std::string& name, std::uint64_t seed, std::size_t instances,
                    const std::function<std::string(std::mt19937_64&)>& body) {
  PropertyOutcome out;
  out.name = name;
  for (std::size_t i = 0; i < instances; ++i) {
    std::mt19937_64 rng(seed * 1000003ULL + i);
    std::string failure;
    try {
      failure = body(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    ++out.instances;
    if (!failure.empty()) {
      if (out.failures++ == 0) out.first_failure = "instance " + std::to_string(i) + ": " + failure;
    }
  }
  return out;
}

DocSpec object_spec(std::mt19937_64& rng) {
  DocSpec s = random_doc_spec(rng);
  s.objects_per_page = between(rng, 1, 3);
  return s;
}

CaptionPreset random_preset(std::mt19937_64& rng, ObjectLabel kind) {
  static const CaptionPosition pos[] = {CaptionPosition::above, CaptionPosition::below, CaptionPosition::left,
                                        CaptionPosition::right};
  const int r = between(rng, 0, 9);
  return CaptionPreset{r < 4 ? CaptionPosition::below : r < 8 ? CaptionPosition::above : pos[between(rng, 0, 3)], kind};
}

}  // namespace

DocSpec random_doc_spec(std::mt19937_64& rng) {
  DocSpec s;
  s.pages = static_cast<std::size_t>(between(rng, 1, 4));
  s.two_column = chance(rng, 0.5);
  s.headers = chance(rng, 0.5);
  s.page_numbers = chance(rng, 0.5);
  s.control_tokens = between(rng, 0, 3);
  s.objects_per_page = chance(rng, 0.5) ? between(rng, 0, 3) : 0;
  return s;
}

Document random_document(std::mt19937_64& rng, const DocSpec& spec) { return DocBuilder(rng, spec).build(); }

PropertyOutcome check_token_conservation(std::uint64_t seed, std::size_t instances) {
  return run("token conservation", seed, instances, [](std::mt19937_64& rng) -> std::string {
    Document doc = random_document(rng, object_spec(rng));
    std::string dup;
    const auto original = accounted(doc, dup);
    const bool font = chance(rng, 0.5);
    const CaptionPreset fig = random_preset(rng, ObjectLabel::figure);
    const CaptionPreset tab = random_preset(rng, ObjectLabel::table);

    std::vector<std::pair<std::string, std::function<void()>>> ops;
    auto maybe = [&](double p, std::string name, std::function<void()> f) {
      if (chance(rng, p)) ops.emplace_back(std::move(name), std::move(f));
    };
    const bool meta_first = chance(rng, 0.5);
    maybe(0.8, "remove_illegal_tokens", [&] { remove_illegal_tokens(doc); });
    if (meta_first) maybe(0.8, "remove_meta", [&] { remove_meta(doc); });
    ops.emplace_back("extract_lines", [&] { extract_lines(doc); });
    if (!meta_first) maybe(0.8, "remove_meta", [&] { remove_meta(doc); });
    maybe(0.5, "concat_columns", [&] { concat_columns(doc); });
    maybe(0.8, "extract_captions", [&] { extract_captions(doc, fig, tab); });
    for (ObjectLabel l : {ObjectLabel::figure, ObjectLabel::table, ObjectLabel::equation}) {
      maybe(0.8, removal_step_name(l), [&doc, l] { remove_object_tokens(doc, l); });
    }
    maybe(0.8, "extract_footnotes", [&] { extract_footnotes(doc); });
    maybe(0.8, "extract_paragraphs", [&] { extract_paragraphs(doc, font); });
    if (!ops.empty() && ops.back().first == "extract_paragraphs") maybe(0.8, "concat_pages", [&] { concat_pages(doc, font); });
    // An operation repeated at a random point must conserve tokens as well.
    if (ops.size() > 1 && chance(rng, 0.3)) {
      const std::size_t k = static_cast<std::size_t>(between(rng, 1, static_cast<int>(ops.size()) - 1));
      if (ops[k].first != "extract_lines") ops.insert(ops.begin() + static_cast<long>(k) + 1, ops[k]);
    }

    for (const auto& [name, op] : ops) {
      const Ids before_pages = page_ids(doc);
      const std::size_t removed_before = doc.removed.size();
      op();
      std::string d;
      const auto now = accounted(doc, d);
      if (!d.empty()) return name + ": " + d;
      if (now != original) return name + ": token set or texts changed";
      // Removals and extractions only ever shrink the page lists, in order.
      if (!is_subsequence(page_ids(doc), before_pages)) return name + ": surviving tokens reordered";
      for (std::size_t i = removed_before; i < doc.removed.size(); ++i) {
        if (doc.removed[i].step != name && name.rfind("remove_", 0) == 0) return name + ": removal logged under " + doc.removed[i].step;
      }
      if (doc.has_stage("extract_lines") && sorted(layout_ids(doc)) != sorted(page_ids(doc))) {
        return name + ": lines and paragraphs disagree with the page tokens";
      }
    }
    return "";
  });
}

PropertyOutcome check_partitions(std::uint64_t seed, std::size_t instances) {
  return run("partition properties", seed, instances, [](std::mt19937_64& rng) -> std::string {
    DocSpec spec = random_doc_spec(rng);
    spec.objects_per_page = 0;
    Document doc = random_document(rng, spec);
    const bool font = chance(rng, 0.5);

    extract_lines(doc);
    if (sorted(ids_of(doc.lines)) != sorted(page_ids(doc))) return "extract_lines: not a partition of the tokens";
    for (const auto& l : doc.lines) {
      if (l.tokens.empty()) return "extract_lines: empty line";
      for (const auto& t : l.tokens) {
        if (t.page != l.page) return "extract_lines: line spans pages";
      }
      if (!line_box_exact(l)) return "extract_lines: line bbox is not the token min/max";
    }

    if (chance(rng, 0.6)) {
      std::vector<Ids> before;
      for (const auto& l : doc.lines) before.push_back(ids_of(std::vector<Line>{l}));
      concat_columns(doc);
      std::vector<Ids> after;
      for (const auto& l : doc.lines) after.push_back(ids_of(std::vector<Line>{l}));
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      if (before != after) return "concat_columns: not a permutation of the lines";
    }

    std::vector<Ids> line_seq;
    for (const auto& l : doc.lines) line_seq.push_back(ids_of(std::vector<Line>{l}));
    extract_paragraphs(doc, font);
    std::vector<Ids> para_lines;
    for (const auto& p : doc.paragraphs) {
      if (p.lines.empty()) return "extract_paragraphs: empty paragraph";
      for (const auto& l : p.lines) para_lines.push_back(ids_of(std::vector<Line>{l}));
    }
    if (para_lines != line_seq) return "extract_paragraphs: lines are not partitioned in order";

    std::vector<Ids> before;
    for (const auto& p : doc.paragraphs) before.push_back(ids_of(p.lines));
    concat_pages(doc, font);
    // Each output paragraph is a run of consecutive input paragraphs.
    std::size_t k = 0;
    for (const auto& p : doc.paragraphs) {
      const Ids ids = ids_of(p.lines);
      Ids acc;
      while (k < before.size() && acc.size() < ids.size()) {
        acc.insert(acc.end(), before[k].begin(), before[k].end());
        ++k;
      }
      if (acc != ids) return "concat_pages: split or reordered a paragraph";
    }
    if (k != before.size()) return "concat_pages: dropped paragraphs";
    return "";
  });
}

PropertyOutcome check_cleanup_idempotence(std::uint64_t seed, std::size_t instances) {
  return run("idempotence: remove_illegal_tokens, remove_meta", seed, instances, [](std::mt19937_64& rng) -> std::string {
    DocSpec spec = random_doc_spec(rng);
    spec.headers = chance(rng, 0.7);
    spec.page_numbers = chance(rng, 0.7);
    spec.control_tokens = between(rng, 0, 4);
    Document doc = random_document(rng, spec);
    if (chance(rng, 0.5)) extract_lines(doc);
    const bool illegal_first = chance(rng, 0.5);
    for (int pass = 0; pass < 2; ++pass) {
      const bool illegal = (pass == 0) == illegal_first;
      const char* name = illegal ? "remove_illegal_tokens" : "remove_meta";
      auto apply = [&] { illegal ? remove_illegal_tokens(doc) : remove_meta(doc); };
      const Ids before = page_ids(doc);
      apply();
      const Snapshot once = snapshot(doc);
      if (!is_subsequence(page_ids(doc), before)) return std::string(name) + ": not an order-preserving filter";
      apply();
      if (!(snapshot(doc) == once)) return std::string(name) + ": second application changed the document";
    }
    for (const auto& p : doc.pages) {
      for (const auto& t : p.tokens) {
        if (is_illegal_text(t.text)) return "illegal token survived";
      }
    }
    return "";
  });
}

PropertyOutcome check_object_removal_idempotence(std::uint64_t seed, std::size_t instances) {
  return run("idempotence: remove_object_tokens", seed, instances, [](std::mt19937_64& rng) -> std::string {
    const Document fresh = random_document(rng, object_spec(rng));
    const bool lines = chance(rng, 0.5);
    static const ObjectLabel kinds[] = {ObjectLabel::figure, ObjectLabel::table, ObjectLabel::equation};
    const ObjectLabel a = kinds[between(rng, 0, 2)];
    const ObjectLabel b = kinds[between(rng, 0, 2)];

    Document doc = fresh;
    if (lines) extract_lines(doc);
    for (ObjectLabel l : {a, b}) {
      // Oracle: the tokens overlapping an object of this label by half or more.
      std::set<std::size_t> expect;
      for (const auto& p : doc.pages) {
        for (const auto& t : p.tokens) {
          for (const auto& o : doc.objects) {
            if (o.label == l && o.page == t.page && overlap_ratio(t.bbox, o.bbox) >= 0.5) expect.insert(t.id);
          }
        }
      }
      const std::size_t n = remove_object_tokens(doc, l);
      if (n != expect.size()) return std::string(to_string(l)) + ": removed " + std::to_string(n) + ", expected " + std::to_string(expect.size());
      const Snapshot once = snapshot(doc);
      if (remove_object_tokens(doc, l) != 0 || !(snapshot(doc) == once)) {
        return std::string(to_string(l)) + ": second application changed the document";
      }
    }

    // Removals commute.
    Document other = fresh;
    if (lines) extract_lines(other);
    remove_object_tokens(other, b);
    remove_object_tokens(other, a);
    if (snapshot(other).pages != snapshot(doc).pages || sorted(snapshot(other).removed) != sorted(snapshot(doc).removed)) {
      return "removals do not commute";
    }
    return "";
  });
}

PropertyOutcome check_caption_injectivity(std::uint64_t seed, std::size_t instances) {
  return run("caption matching injectivity", seed, instances, [](std::mt19937_64& rng) -> std::string {
    Document doc = random_document(rng, object_spec(rng));
    extract_lines(doc);
    if (chance(rng, 0.5)) concat_columns(doc);
    extract_captions(doc, random_preset(rng, ObjectLabel::figure), random_preset(rng, ObjectLabel::table));
    if (chance(rng, 0.3)) extract_captions(doc, random_preset(rng, ObjectLabel::figure), random_preset(rng, ObjectLabel::table));

    std::size_t caption_objects = 0;
    for (const auto& o : doc.objects) caption_objects += o.label == ObjectLabel::caption;
    if (doc.captions.size() != caption_objects) return "caption records do not match caption objects one to one";
    std::vector<DetectedObject> caps;
    std::vector<DetectedObject> targets;
    for (const auto& c : doc.captions) {
      if (std::find(caps.begin(), caps.end(), c.caption) != caps.end()) return "caption used twice";
      caps.push_back(c.caption);
      if (!c.target) continue;
      if (std::find(targets.begin(), targets.end(), *c.target) != targets.end()) return "object matched twice";
      targets.push_back(*c.target);
      if (std::find(doc.objects.begin(), doc.objects.end(), *c.target) == doc.objects.end()) return "target is not a detected object";
      if (c.target->label != c.kind) return "target kind differs from caption kind";
      if (c.target->page != c.caption.page) return "target on another page";
      if (edge_distance(c.caption.bbox, c.target->bbox) > kMaxCaptionDistance) return "target beyond the distance cap";
    }
    return "";
  });
}

PropertyOutcome check_reading_order(std::uint64_t seed, std::size_t instances) {
  return run("reading order vs brute-force oracle", seed, instances, [](std::mt19937_64& rng) -> std::string {
    const int n = between(rng, 1, 24);
    std::vector<Line> input;
    for (int i = 0; i < n; ++i) {
      // Coarse grids force ties on every key component.
      const double x0 = 10.0 * between(rng, 0, 4);
      const double y0 = 10.0 * between(rng, 0, 4);
      Line l = Line::from_tokens({tok(static_cast<std::size_t>(i), "w" + std::to_string(i), x0, y0, x0 + between(rng, 1, 9),
                                      y0 + 5.0, 10.0, static_cast<std::size_t>(between(rng, 0, 2)))});
      l.column = between(rng, 0, 2);
      input.push_back(std::move(l));
    }
    std::shuffle(input.begin(), input.end(), rng);

    // Oracle: each item's rank is the number of items that must precede it,
    // counted by comparing every pair on (page, column, y0, x0, input index).
    auto before = [&](int a, int b) {
      const Line& la = input[static_cast<std::size_t>(a)];
      const Line& lb = input[static_cast<std::size_t>(b)];
      const auto ka = std::make_tuple(la.page, la.column, la.bbox.y0(), la.bbox.x0(), a);
      const auto kb = std::make_tuple(lb.page, lb.column, lb.bbox.y0(), lb.bbox.x0(), b);
      return ka < kb;
    };
    Ids expected(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      int rank = 0;
      for (int j = 0; j < n; ++j) rank += before(j, i);
      expected[static_cast<std::size_t>(rank)] = input[static_cast<std::size_t>(i)].tokens[0].id;
    }

    std::vector<Line> got = input;
    sort_reading_order(got);
    if (ids_of(got) != expected) return "sort_reading_order differs from the oracle";

    // With distinct keys every permutation sorts to the same sequence.
    std::vector<Line> distinct;
    std::set<std::tuple<std::size_t, int, double, double>> seen;
    for (const auto& l : input) {
      if (seen.emplace(l.page, l.column, l.bbox.y0(), l.bbox.x0()).second) distinct.push_back(l);
    }
    std::vector<Line> a = distinct;
    std::vector<Line> b = distinct;
    std::shuffle(b.begin(), b.end(), rng);
    sort_reading_order(a);
    sort_reading_order(b);
    if (ids_of(a) != ids_of(b)) return "order depends on the input permutation";
    return "";
  });
}

}  // namespace testkit
