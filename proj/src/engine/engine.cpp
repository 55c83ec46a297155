#include "engine/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <map>
#include <thread>

#include "cleanup/cleanup.hpp"
#include "ingest/ingest.hpp"
#include "structure/structure.hpp"

namespace paperjson {

namespace fs = std::filesystem;

namespace {

constexpr StepName kAllSteps[] = {
    StepName::load_docs,
    StepName::load_objects_with_ml,
    StepName::remove_illegal_tokens,
    StepName::remove_meta,
    StepName::extract_lines,
    StepName::extract_captions_with_ml,
    StepName::remove_figures_with_ml,
    StepName::remove_tables_with_ml,
    StepName::remove_equations_with_ml,
    StepName::extract_footnotes_with_ml,
    StepName::extract_paragraphs,
    StepName::concat_columns,
    StepName::detect_sections,
    StepName::concat_pages,
    StepName::dump_formatted_doc,
};

[[noreturn]] void bad_option(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorCode::invalid_option, "option --" + key + " \"" + value + "\": " + why);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  bad_option(key, v, "expected true or false");
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) bad_option(key, v, "expected a number");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) bad_option(key, v, "expected an integer");
  return out;
}

CaptionPosition parse_position(const std::string& key, const std::string& v) {
  auto p = parse_caption_position(v);
  if (!p) bad_option(key, v, "expected above, below, left or right");
  return *p;
}

std::string format_double(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, ptr);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_ml_consumer(StepName s) {
  switch (s) {
    case StepName::extract_captions_with_ml:
    case StepName::remove_figures_with_ml:
    case StepName::remove_tables_with_ml:
    case StepName::remove_equations_with_ml:
    case StepName::extract_footnotes_with_ml:
      return true;
    default:
      return false;
  }
}

Pipeline make_recipe_pipeline(bool two_column, CaptionPosition table_pos) {
  Pipeline p;
  for (StepName s : standard_steps()) {
    p.steps.push_back(s);
    if (two_column && s == StepName::extract_lines) p.steps.push_back(StepName::concat_columns);
  }
  p.options.figure_caption_pos = CaptionPosition::below;
  p.options.table_caption_pos = table_pos;
  p.options.consider_font_size = true;
  p.options.headline_names = {"Abstract", "Acknowledgments", "References", "Appendix"};
  return p;
}

}  // namespace

const char* to_string(StepName s) {
  switch (s) {
    case StepName::load_docs: return "load_docs";
    case StepName::load_objects_with_ml: return "load_objects_with_ml";
    case StepName::remove_illegal_tokens: return "remove_illegal_tokens";
    case StepName::remove_meta: return "remove_meta";
    case StepName::extract_lines: return "extract_lines";
    case StepName::extract_captions_with_ml: return "extract_captions_with_ml";
    case StepName::remove_figures_with_ml: return "remove_figures_with_ml";
    case StepName::remove_tables_with_ml: return "remove_tables_with_ml";
    case StepName::remove_equations_with_ml: return "remove_equations_with_ml";
    case StepName::extract_footnotes_with_ml: return "extract_footnotes_with_ml";
    case StepName::extract_paragraphs: return "extract_paragraphs";
    case StepName::concat_columns: return "concat_columns";
    case StepName::detect_sections: return "detect_sections";
    case StepName::concat_pages: return "concat_pages";
    case StepName::dump_formatted_doc: return "dump_formatted_doc";
  }
  return "?";
}

std::optional<StepName> parse_step_name(std::string_view s) {
  for (StepName step : kAllSteps) {
    if (s == to_string(step)) return step;
  }
  return std::nullopt;
}

const std::vector<StepName>& all_step_names() {
  static const std::vector<StepName> v(std::begin(kAllSteps), std::end(kAllSteps));
  return v;
}

const std::vector<StepName>& standard_steps() {
  static const std::vector<StepName> v = {
      StepName::load_docs,
      StepName::load_objects_with_ml,
      StepName::remove_illegal_tokens,
      StepName::remove_meta,
      StepName::extract_lines,
      StepName::extract_captions_with_ml,
      StepName::remove_figures_with_ml,
      StepName::remove_tables_with_ml,
      StepName::remove_equations_with_ml,
      StepName::extract_footnotes_with_ml,
      StepName::extract_paragraphs,
      StepName::detect_sections,
      StepName::concat_pages,
      StepName::dump_formatted_doc,
  };
  return v;
}

bool OptionSet::operator==(const OptionSet& o) const {
  return table_caption_pos == o.table_caption_pos && figure_caption_pos == o.figure_caption_pos &&
         consider_font_size == o.consider_font_size && headline_names == o.headline_names &&
         detector == o.detector && external_annotations == o.external_annotations && indent == o.indent &&
         jobs == o.jobs && strict == o.strict && verbose == o.verbose &&
         thresholds.line_overlap == o.thresholds.line_overlap &&
         thresholds.para_gap_factor == o.thresholds.para_gap_factor &&
         thresholds.indent_pt == o.thresholds.indent_pt && thresholds.size_tol_pt == o.thresholds.size_tol_pt;
}

Pipeline parse_pipeline(const std::vector<std::string>& step_names, const RawOptions& raw) {
  Pipeline p;
  for (const auto& name : step_names) {
    auto s = parse_step_name(name);
    if (!s) throw Error(ErrorCode::unknown_step, "unknown step \"" + name + "\"");
    p.steps.push_back(*s);
  }
  OptionSet& o = p.options;
  for (const auto& [key, value] : raw) {
    if (key == "preset_table_caption_pos") {
      o.table_caption_pos = parse_position(key, value);
    } else if (key == "preset_figure_caption_pos") {
      o.figure_caption_pos = parse_position(key, value);
    } else if (key == "consider_font_size") {
      o.consider_font_size = parse_bool(key, value);
    } else if (key == "headline_names") {
      if (value.empty()) bad_option(key, value, "headline names must be non-empty");
      o.headline_names.push_back(value);
    } else if (key == "detector") {
      if (value == "heuristic") {
        o.detector = DetectorBackend::heuristic;
      } else if (value == "external") {
        o.detector = DetectorBackend::external;
      } else {
        bad_option(key, value, "expected heuristic or external");
      }
    } else if (key == "external_annotations") {
      if (value.empty()) bad_option(key, value, "path must be non-empty");
      o.external_annotations = fs::path(value);
    } else if (key == "indent") {
      const int n = parse_int(key, value);
      if (n < 0) bad_option(key, value, "must be >= 0");
      o.indent = n;
    } else if (key == "jobs") {
      const int n = parse_int(key, value);
      if (n < 1) bad_option(key, value, "must be >= 1");
      o.jobs = n;
    } else if (key == "strict") {
      o.strict = parse_bool(key, value);
    } else if (key == "verbose") {
      o.verbose = parse_bool(key, value);
    } else if (key == "line_overlap") {
      const double v = parse_double(key, value);
      if (!(v > 0.0 && v <= 1.0)) bad_option(key, value, "must lie in (0, 1]");
      o.thresholds.line_overlap = v;
    } else if (key == "para_gap_factor") {
      const double v = parse_double(key, value);
      if (!(v > 0.0)) bad_option(key, value, "must be > 0");
      o.thresholds.para_gap_factor = v;
    } else if (key == "indent_pt") {
      const double v = parse_double(key, value);
      if (!(v >= 0.0)) bad_option(key, value, "must be >= 0");
      o.thresholds.indent_pt = v;
    } else if (key == "size_tol_pt") {
      const double v = parse_double(key, value);
      if (!(v >= 0.0)) bad_option(key, value, "must be >= 0");
      o.thresholds.size_tol_pt = v;
    } else {
      throw Error(ErrorCode::invalid_option, "unknown option --" + key);
    }
  }
  if (o.detector == DetectorBackend::external && !o.external_annotations) {
    throw Error(ErrorCode::invalid_option, "--detector external needs --external_annotations");
  }
  return p;
}

std::vector<std::string> validate_pipeline(const Pipeline& p) {
  std::vector<std::string> out;
  const auto& steps = p.steps;
  if (steps.empty()) {
    out.push_back("pipeline is empty");
    return out;
  }
  std::map<StepName, std::size_t> first_pos;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!first_pos.emplace(steps[i], i).second) {
      out.push_back(std::string("duplicate step ") + to_string(steps[i]));
    }
  }
  if (steps.front() != StepName::load_docs) out.push_back("load_docs must be the first step");
  if (steps.back() != StepName::dump_formatted_doc) out.push_back("dump_formatted_doc must be the last step");

  auto pos = [&](StepName s) -> std::optional<std::size_t> {
    auto it = first_pos.find(s);
    if (it == first_pos.end()) return std::nullopt;
    return it->second;
  };
  auto needs = [&](StepName step, std::initializer_list<StepName> any_of, const std::string& wording) {
    auto at = pos(step);
    if (!at) return;
    for (StepName dep : any_of) {
      auto d = pos(dep);
      if (d && *d < *at) return;
    }
    out.push_back(std::string(to_string(step)) + " requires " + wording + " earlier in the pipeline");
  };
  for (StepName s : kAllSteps) {
    if (is_ml_consumer(s)) needs(s, {StepName::load_objects_with_ml}, "load_objects_with_ml");
  }
  for (StepName s : {StepName::extract_paragraphs, StepName::concat_columns, StepName::extract_captions_with_ml,
                     StepName::extract_footnotes_with_ml}) {
    needs(s, {StepName::extract_lines}, "extract_lines");
  }
  needs(StepName::concat_pages, {StepName::extract_paragraphs}, "extract_paragraphs");
  needs(StepName::detect_sections, {StepName::concat_pages, StepName::extract_paragraphs},
        "concat_pages or extract_paragraphs");
  needs(StepName::dump_formatted_doc, {StepName::detect_sections}, "detect_sections");
  return out;
}

std::pair<std::vector<std::string>, RawOptions> render_pipeline(const Pipeline& p) {
  std::vector<std::string> steps;
  for (StepName s : p.steps) steps.emplace_back(to_string(s));
  const OptionSet& o = p.options;
  const OptionSet d;
  RawOptions raw;
  if (o.table_caption_pos != d.table_caption_pos) raw.emplace_back("preset_table_caption_pos", to_string(o.table_caption_pos));
  if (o.figure_caption_pos != d.figure_caption_pos) raw.emplace_back("preset_figure_caption_pos", to_string(o.figure_caption_pos));
  if (o.consider_font_size) raw.emplace_back("consider_font_size", "true");
  for (const auto& n : o.headline_names) raw.emplace_back("headline_names", n);
  if (o.detector == DetectorBackend::external) raw.emplace_back("detector", "external");
  if (o.external_annotations) raw.emplace_back("external_annotations", o.external_annotations->string());
  if (o.indent) raw.emplace_back("indent", std::to_string(*o.indent));
  if (o.jobs != d.jobs) raw.emplace_back("jobs", std::to_string(o.jobs));
  if (o.strict) raw.emplace_back("strict", "true");
  if (o.verbose) raw.emplace_back("verbose", "true");
  const Thresholds& t = o.thresholds;
  if (t.line_overlap != d.thresholds.line_overlap) raw.emplace_back("line_overlap", format_double(t.line_overlap));
  if (t.para_gap_factor != d.thresholds.para_gap_factor) raw.emplace_back("para_gap_factor", format_double(t.para_gap_factor));
  if (t.indent_pt != d.thresholds.indent_pt) raw.emplace_back("indent_pt", format_double(t.indent_pt));
  if (t.size_tol_pt != d.thresholds.size_tol_pt) raw.emplace_back("size_tol_pt", format_double(t.size_tol_pt));
  return {steps, raw};
}

std::vector<std::string> render_arguments(const Pipeline& p) {
  auto [steps, raw] = render_pipeline(p);
  std::vector<std::string> args{"--pipeline"};
  args.insert(args.end(), steps.begin(), steps.end());
  std::vector<std::string> names;
  for (const auto& [k, v] : raw) {
    if (k == "headline_names") {
      names.push_back(v);
    } else if (k == "consider_font_size" || k == "strict" || k == "verbose") {
      args.push_back("--" + k);
    } else {
      args.push_back("--" + k);
      args.push_back(v);
    }
  }
  if (!names.empty()) {
    args.emplace_back("--headline_names");
    args.insert(args.end(), names.begin(), names.end());
  }
  return args;
}

const std::vector<Recipe>& recipe_table() {
  // Version kRecipeTableVersion. Two-column venues get concat_columns; ACL,
  // ACM and IEEE put table captions above the table.
  static const std::vector<Recipe> table = {
      {"AAAI", true, make_recipe_pipeline(true, CaptionPosition::below)},
      {"ACL", true, make_recipe_pipeline(true, CaptionPosition::above)},
      {"ICML", true, make_recipe_pipeline(true, CaptionPosition::below)},
      {"ICLR", false, make_recipe_pipeline(false, CaptionPosition::below)},
      {"NeurIPS", false, make_recipe_pipeline(false, CaptionPosition::below)},
      {"ACM", true, make_recipe_pipeline(true, CaptionPosition::above)},
      {"IEEE", true, make_recipe_pipeline(true, CaptionPosition::above)},
      {"Springer", false, make_recipe_pipeline(false, CaptionPosition::below)},
  };
  return table;
}

std::vector<std::string> supported_venues() {
  std::vector<std::string> out;
  for (const auto& r : recipe_table()) out.push_back(r.venue);
  return out;
}

Pipeline resolve_recipe(std::string_view venue) {
  const std::string want = lower(venue);
  for (const auto& r : recipe_table()) {
    if (lower(r.venue) == want) return r.pipeline;
  }
  std::string list;
  for (const auto& v : supported_venues()) list += (list.empty() ? "" : ", ") + v;
  throw Error(ErrorCode::unknown_venue, "unknown venue \"" + std::string(venue) + "\"; supported: " + list);
}

std::size_t RunReport::succeeded() const {
  return static_cast<std::size_t>(std::count_if(files.begin(), files.end(), [](const FileReport& f) { return f.ok; }));
}

std::size_t RunReport::failed() const { return files.size() - succeeded(); }

int RunReport::exit_code(bool strict) const {
  if (files.empty()) return 0;
  if (succeeded() == 0) return 2;
  if (strict && failed() > 0) return 2;
  return 0;
}

void run_steps(const Pipeline& p, Document& doc, const fs::path& output_dir) {
  const OptionSet& o = p.options;
  const DetectionSource source{o.detector, o.external_annotations};
  const CaptionPreset fig{o.figure_caption_pos, ObjectLabel::figure};
  const CaptionPreset tab{o.table_caption_pos, ObjectLabel::table};
  for (StepName s : p.steps) {
    switch (s) {
      case StepName::load_docs:
        doc.mark_stage("load_docs");
        break;
      case StepName::load_objects_with_ml: load_objects(doc, source); break;
      case StepName::remove_illegal_tokens: remove_illegal_tokens(doc); break;
      case StepName::remove_meta: remove_meta(doc); break;
      case StepName::extract_lines: extract_lines(doc, o.thresholds); break;
      case StepName::extract_captions_with_ml: extract_captions(doc, fig, tab); break;
      case StepName::remove_figures_with_ml: remove_object_tokens(doc, ObjectLabel::figure); break;
      case StepName::remove_tables_with_ml: remove_object_tokens(doc, ObjectLabel::table); break;
      case StepName::remove_equations_with_ml: remove_object_tokens(doc, ObjectLabel::equation); break;
      case StepName::extract_footnotes_with_ml: extract_footnotes(doc, o.thresholds); break;
      case StepName::extract_paragraphs: extract_paragraphs(doc, o.consider_font_size, o.thresholds); break;
      case StepName::concat_columns: concat_columns(doc); break;
      case StepName::detect_sections: detect_sections(doc, o.headline_names, o.consider_font_size); break;
      case StepName::concat_pages: concat_pages(doc, o.consider_font_size, o.thresholds); break;
      case StepName::dump_formatted_doc: dump_formatted_doc(doc, output_dir, o.indent); break;
    }
  }
}

RunReport run_pipeline(const Pipeline& p, const fs::path& input, const fs::path& output_dir) {
  const auto violations = validate_pipeline(p);
  if (!violations.empty()) {
    std::string msg = "invalid pipeline:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw Error(ErrorCode::invalid_pipeline, msg);
  }
  const std::vector<fs::path> inputs = list_pdfs(input);
  RunReport report;
  report.files.resize(inputs.size());

  auto process = [&](std::size_t i) {
    FileReport& r = report.files[i];
    r.input = inputs[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      Document doc = make_document(load_document(inputs[i]));
      run_steps(p, doc, output_dir);
      r.ok = true;
      r.output = output_dir / (inputs[i].stem().string() + ".json");
      r.warnings = std::move(doc.warnings);
    } catch (const Error& e) {
      r.error = e.what();
      r.error_code = e.code();
    } catch (const std::exception& e) {
      r.error = e.what();
      r.error_code = ErrorCode::pdf_parse;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, p.options.jobs)), inputs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < inputs.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) process(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return report;
}

}  // namespace paperjson
