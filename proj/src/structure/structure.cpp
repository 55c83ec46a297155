#include "structure/structure.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace paperjson {

using nlohmann::json;

namespace {

// Kept identical to docs/output.schema.json (a unit test compares them).
constexpr const char* kSchema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "paperjson output",
  "type": "object",
  "properties": {
    "title": {"type": ["string", "null"]},
    "body": {
      "type": "array",
      "items": {
        "type": "object",
        "properties": {
          "title": {"type": "string"},
          "content": {"type": "array", "items": {"type": "string"}}
        },
        "required": ["title", "content"],
        "additionalProperties": false
      }
    },
    "footnotes": {"type": "array", "items": {"type": "string"}},
    "captions": {
      "type": "array",
      "items": {
        "type": "object",
        "properties": {
          "label": {"type": "string", "enum": ["figure", "table"]},
          "text": {"type": "string"}
        },
        "required": ["label", "text"],
        "additionalProperties": false
      }
    }
  },
  "required": ["title", "body", "footnotes", "captions"],
  "additionalProperties": false
})";

std::size_t word_count(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

std::string quoted(const std::string& s) {
  return json(s).dump(-1, ' ', false, json::error_handler_t::replace);
}

nlohmann::ordered_json to_value(const StructuredDocument& sd) {
  using ojson = nlohmann::ordered_json;
  ojson j = ojson::object();
  j["title"] = sd.title ? ojson(*sd.title) : ojson(nullptr);
  ojson body = ojson::array();
  for (const auto& s : sd.body) body.push_back(ojson{{"title", s.title}, {"content", s.content}});
  j["body"] = std::move(body);
  j["footnotes"] = sd.footnotes;
  ojson caps = ojson::array();
  for (const auto& c : sd.captions) caps.push_back(ojson{{"label", c.label}, {"text", c.text}});
  j["captions"] = std::move(caps);
  return j;
}

std::string type_name(const json& v) {
  switch (v.type()) {
    case json::value_t::null: return "null";
    case json::value_t::boolean: return "boolean";
    case json::value_t::string: return "string";
    case json::value_t::array: return "array";
    case json::value_t::object: return "object";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return "integer";
    case json::value_t::number_float: return "number";
    default: return "unknown";
  }
}

bool type_matches(const std::string& want, const json& v) {
  const std::string have = type_name(v);
  return want == have || (want == "number" && have == "integer");
}

void check(const json& schema, const json& v, const std::string& where, std::vector<std::string>& out) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>(), v);
    } else {
      for (const auto& alt : t) ok = ok || type_matches(alt.get<std::string>(), v);
    }
    if (!ok) {
      out.push_back(where + ": expected type " + t.dump() + ", got " + type_name(v));
      return;
    }
  }
  if (schema.contains("enum")) {
    const auto& e = schema["enum"];
    if (std::find(e.begin(), e.end(), v) == e.end()) out.push_back(where + ": value " + v.dump() + " not in enum");
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& k : schema["required"]) {
        if (!v.contains(k.get<std::string>())) out.push_back(where + ": missing key \"" + k.get<std::string>() + "\"");
      }
    }
    const json props = schema.value("properties", json::object());
    for (const auto& [k, child] : v.items()) {
      if (props.contains(k)) {
        check(props[k], child, where + "." + k, out);
      } else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false) {
        out.push_back(where + ": unexpected key \"" + k + "\"");
      }
    }
  }
  if (v.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) check(schema["items"], v[i], where + "[" + std::to_string(i) + "]", out);
  }
}

}  // namespace

bool looks_numbered_heading(std::string_view first_line, std::string_view full_text) {
  static const std::regex numbered(R"(^\d+(\.\d+)*[\.\)]?\s+\S)");
  static const std::regex appendix(R"(^[A-Z](\.\d+)*\s+\S)");
  const std::string line(first_line);
  if (std::regex_search(line, numbered)) return true;
  return std::regex_search(line, appendix) && word_count(full_text) <= 6;
}

void detect_sections(Document& doc, const std::vector<std::string>& headline_names, bool consider_font_size) {
  doc.require_stage("detect_sections", "extract_paragraphs");
  std::vector<std::string> names;
  for (const auto& n : headline_names) names.push_back(text::normalize_for_match(n));

  std::vector<Line> all_lines;
  for (const auto& p : doc.paragraphs) all_lines.insert(all_lines.end(), p.lines.begin(), p.lines.end());
  const double body = dominant_font_size(all_lines);

  std::vector<bool> structural(doc.paragraphs.size(), false);  // rules (a) and (b)
  for (std::size_t i = 0; i < doc.paragraphs.size(); ++i) {
    Paragraph& p = doc.paragraphs[i];
    const std::string first = p.lines.front().text();
    const bool numbered = looks_numbered_heading(first, p.text);
    const std::string norm = text::normalize_for_match(p.text);
    const bool named = std::find(names.begin(), names.end(), norm) != names.end();
    const bool sized = consider_font_size && p.dominant_font_size >= body + 1.0 && p.lines.size() <= 2;
    structural[i] = numbered || named;
    p.role = (numbered || named || sized) ? ParagraphRole::heading : ParagraphRole::body;
  }

  // Title: the largest clearly-larger paragraph on page 0 ahead of the first
  // structural heading, running across the columns (or on a one-column page).
  const ColumnLayout* layout0 = doc.layout_for(0);
  const bool single0 = !layout0 || layout0->boundaries.empty();
  std::size_t best = doc.paragraphs.size();
  for (std::size_t i = 0; i < doc.paragraphs.size() && !structural[i]; ++i) {
    const Paragraph& p = doc.paragraphs[i];
    if (p.first_page != 0) break;
    if (!(p.span_all || single0)) continue;
    if (p.dominant_font_size < body + 1.0) continue;
    if (best == doc.paragraphs.size() || p.dominant_font_size > doc.paragraphs[best].dominant_font_size) best = i;
  }
  if (best != doc.paragraphs.size()) doc.paragraphs[best].role = ParagraphRole::title;
  doc.mark_stage("detect_sections");
}

StructuredDocument build_structure(const Document& doc) {
  StructuredDocument sd;
  for (const auto& p : doc.paragraphs) {
    switch (p.role) {
      case ParagraphRole::title:
        if (!sd.title) {
          sd.title = p.text;
          break;
        }
        [[fallthrough]];
      case ParagraphRole::heading:
        sd.body.push_back(SectionEntry{p.text, {}});
        break;
      default:
        if (sd.body.empty()) sd.body.push_back(SectionEntry{"", {}});
        sd.body.back().content.push_back(p.text);
    }
  }
  for (const auto& f : doc.footnotes) sd.footnotes.push_back(f.text);
  for (const auto& c : doc.captions) sd.captions.push_back(CaptionEntry{to_string(c.kind), c.text});
  return sd;
}

std::string to_json(const StructuredDocument& sd, std::optional<int> indent) {
  if (indent) {
    return to_value(sd).dump(*indent, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
  }
  auto string_list = [](const std::vector<std::string>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + quoted(xs[i]);
    return s + "]";
  };
  std::string out = "{\"title\": ";
  out += sd.title ? quoted(*sd.title) : "null";
  out += ", \"body\": [";
  for (std::size_t i = 0; i < sd.body.size(); ++i) {
    if (i) out += ", ";
    out += "{\"title\": " + quoted(sd.body[i].title) + ", \"content\": " + string_list(sd.body[i].content) + "}";
  }
  out += "], \"footnotes\": " + string_list(sd.footnotes) + ", \"captions\": [";
  for (std::size_t i = 0; i < sd.captions.size(); ++i) {
    if (i) out += ", ";
    out += "{\"label\": " + quoted(sd.captions[i].label) + ", \"text\": " + quoted(sd.captions[i].text) + "}";
  }
  out += "]}\n";
  return out;
}

StructuredDocument structured_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_argument, std::string("not JSON: ") + e.what());
  }
  const auto problems = schema_violations(output_schema(), j);
  if (!problems.empty()) throw Error(ErrorCode::invalid_argument, "not an output document: " + problems.front());
  StructuredDocument sd;
  if (!j["title"].is_null()) sd.title = j["title"].get<std::string>();
  for (const auto& s : j["body"]) {
    sd.body.push_back(SectionEntry{s["title"].get<std::string>(), s["content"].get<std::vector<std::string>>()});
  }
  sd.footnotes = j["footnotes"].get<std::vector<std::string>>();
  for (const auto& c : j["captions"]) {
    sd.captions.push_back(CaptionEntry{c["label"].get<std::string>(), c["text"].get<std::string>()});
  }
  return sd;
}

const json& output_schema() {
  static const json schema = json::parse(kSchema);
  return schema;
}

std::vector<std::string> schema_violations(const json& schema, const json& value) {
  std::vector<std::string> out;
  check(schema, value, "$", out);
  return out;
}

std::filesystem::path dump_formatted_doc(Document& doc, const std::filesystem::path& output_dir,
                                         std::optional<int> indent) {
  doc.require_stage("dump_formatted_doc", "detect_sections");
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory " + output_dir.string() + ": " + ec.message());
  const auto path = output_dir / (std::filesystem::path(doc.source_path).stem().string() + ".json");
  if (std::filesystem::exists(path)) doc.warnings.push_back("overwriting existing " + path.string());
  const std::string body = to_json(build_structure(doc), indent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << body;
  out.close();
  if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
  doc.mark_stage("dump_formatted_doc");
  return path;
}

}  // namespace paperjson
