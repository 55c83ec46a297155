#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "core/model.hpp"

namespace paperjson {

enum class DetectorBackend { heuristic, external };

struct DetectionSource {
  DetectorBackend backend = DetectorBackend::heuristic;
  // Required for external. A directory holds one <pdf-stem>.json per input.
  std::optional<std::filesystem::path> annotation_path;
};

// Page-independent facts the heuristics need.
struct HeuristicContext {
  double body_size = 0.0;  // modal text size of the document; 0 = use the page's own
};

std::vector<DetectedObject> detect_objects_heuristic(const PageData& page,
                                                     const HeuristicContext& ctx = {});

// Parses an annotation file body. Objects are clipped to their page; boxes
// that vanish after clipping are dropped with a warning.
std::vector<DetectedObject> parse_annotations(std::string_view json, const std::vector<PageData>& pages,
                                              std::vector<std::string>* warnings = nullptr);

// The load_objects_with_ml step. Replaces doc.objects.
void load_objects(Document& doc, const DetectionSource& source);

// Caption prefix test used by the detector: "Figure N", "Fig. N" or "Table N",
// optionally followed by ':' or '.'. Returns the kind, if any.
std::optional<ObjectLabel> caption_kind(std::string_view line_text);

}  // namespace paperjson
