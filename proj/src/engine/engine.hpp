#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assemble/assemble.hpp"
#include "core/error.hpp"
#include "core/model.hpp"
#include "detect/detect.hpp"
#include "objects/objects.hpp"

namespace paperjson {

enum class StepName {
  load_docs,
  load_objects_with_ml,
  remove_illegal_tokens,
  remove_meta,
  extract_lines,
  extract_captions_with_ml,
  remove_figures_with_ml,
  remove_tables_with_ml,
  remove_equations_with_ml,
  extract_footnotes_with_ml,
  extract_paragraphs,
  concat_columns,
  detect_sections,
  concat_pages,
  dump_formatted_doc,
};

const char* to_string(StepName s);
std::optional<StepName> parse_step_name(std::string_view s);
const std::vector<StepName>& all_step_names();

// The fourteen-step sequence used for single-column papers.
const std::vector<StepName>& standard_steps();

struct OptionSet {
  CaptionPosition table_caption_pos = CaptionPosition::below;
  CaptionPosition figure_caption_pos = CaptionPosition::below;
  bool consider_font_size = false;
  std::vector<std::string> headline_names;
  DetectorBackend detector = DetectorBackend::heuristic;
  std::optional<std::filesystem::path> external_annotations;
  std::optional<int> indent;
  int jobs = 1;
  bool strict = false;
  bool verbose = false;
  Thresholds thresholds;

  bool operator==(const OptionSet& o) const;
};

struct Pipeline {
  std::vector<StepName> steps;
  OptionSet options;

  bool operator==(const Pipeline& o) const { return steps == o.steps && options == o.options; }
};

// Option keys are the long flag names without dashes. Repeating
// headline_names appends; any other repeated key keeps the last value.
using RawOptions = std::vector<std::pair<std::string, std::string>>;

// Throws unknown_step or invalid_option.
Pipeline parse_pipeline(const std::vector<std::string>& step_names, const RawOptions& raw);

// Every dependency/ordering violation, in a stable order. Empty means valid.
std::vector<std::string> validate_pipeline(const Pipeline& p);

// Inverse of parse_pipeline: step names plus the non-default options.
std::pair<std::vector<std::string>, RawOptions> render_pipeline(const Pipeline& p);

// The same, spelled as command-line arguments ("--pipeline a b --x y ...").
std::vector<std::string> render_arguments(const Pipeline& p);

inline constexpr int kRecipeTableVersion = 1;

struct Recipe {
  std::string venue;
  bool two_column = false;
  Pipeline pipeline;
};

const std::vector<Recipe>& recipe_table();
std::vector<std::string> supported_venues();

// Case-insensitive; throws unknown_venue listing the supported names.
Pipeline resolve_recipe(std::string_view venue);

struct FileReport {
  std::filesystem::path input;
  bool ok = false;
  std::optional<std::filesystem::path> output;
  std::string error;
  ErrorCode error_code = ErrorCode::io;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

struct RunReport {
  std::vector<FileReport> files;

  std::size_t succeeded() const;
  std::size_t failed() const;
  // 0 on success; 2 when every file failed, or any did under strict mode.
  int exit_code(bool strict) const;
};

// Runs the steps after load_docs on an already loaded document.
void run_steps(const Pipeline& p, Document& doc, const std::filesystem::path& output_dir);

// Throws invalid_pipeline (message lists every violation), path_not_found
// or no_pdfs_in_directory before touching any file. Per-file failures are
// reported, not thrown.
RunReport run_pipeline(const Pipeline& p, const std::filesystem::path& input,
                       const std::filesystem::path& output_dir);

}  // namespace paperjson
