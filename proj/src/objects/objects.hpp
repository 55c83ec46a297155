#pragma once

#include <optional>
#include <string_view>

#include "assemble/assemble.hpp"
#include "core/model.hpp"

namespace paperjson {

// Where a caption sits relative to its figure or table.
enum class CaptionPosition { above, below, left, right };
const char* to_string(CaptionPosition pos);
std::optional<CaptionPosition> parse_caption_position(std::string_view s);

struct CaptionPreset {
  CaptionPosition position = CaptionPosition::below;
  ObjectLabel applies_to = ObjectLabel::figure;
};

// Captions farther than this from every candidate stay unmatched.
inline constexpr double kMaxCaptionDistance = 72.0;

// True when `caption` lies on the preset side of `object`.
bool in_preset_direction(const BBox& caption, const BBox& object, CaptionPosition pos);

void extract_captions(Document& doc, const CaptionPreset& figure_preset, const CaptionPreset& table_preset);

// Backs remove_figures_with_ml, remove_tables_with_ml and
// remove_equations_with_ml. Returns the number of tokens removed.
std::size_t remove_object_tokens(Document& doc, ObjectLabel label);
const char* removal_step_name(ObjectLabel label);

void extract_footnotes(Document& doc, const Thresholds& th = {});

}  // namespace paperjson
