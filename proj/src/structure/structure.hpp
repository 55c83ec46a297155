#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/model.hpp"

namespace paperjson {

// Numbered heading test on a paragraph's first line ("3", "2.1.", "4)" ...),
// plus appendix-style "A.1 Proofs" when the heading has at most six words.
bool looks_numbered_heading(std::string_view first_line, std::string_view full_text);

void detect_sections(Document& doc, const std::vector<std::string>& headline_names, bool consider_font_size);

// Builds the output value from paragraph roles. Body text that precedes the
// first heading lands in a section titled "".
StructuredDocument build_structure(const Document& doc);

// Serialized form. Without an indent the output is a single line with ", "
// and ": " separators; with one, each level is indented by that many spaces.
// Both end with a newline.
std::string to_json(const StructuredDocument& sd, std::optional<int> indent = std::nullopt);

// Inverse of to_json. Throws Error(invalid_argument) on shape errors.
StructuredDocument structured_from_json(std::string_view text);

// The published JSON Schema for output files.
const nlohmann::json& output_schema();

// Checks `value` against a JSON Schema using the keywords the output schema
// needs: type, properties, required, additionalProperties, items, enum.
// Returns one message per violation.
std::vector<std::string> schema_violations(const nlohmann::json& schema, const nlohmann::json& value);

// Writes <stem>.json into output_dir and returns its path. An existing file
// is overwritten with a warning.
std::filesystem::path dump_formatted_doc(Document& doc, const std::filesystem::path& output_dir,
                                         std::optional<int> indent = std::nullopt);

}  // namespace paperjson
